/** Payload shapes of the /v1 API. The dashboard never recomputes any of
 * these values; it renders them as delivered. */

export type AnswerStatus = "compliant" | "non_compliant" | "not_applicable";

export interface RatioPayload {
  compliant: number;
  applicable: number;
  percent: number;
}

export interface SectionScorePayload {
  id: string;
  title: string;
  compliant: number;
  applicable: number;
  percent: number | null;
}

export interface FindingPayload {
  section_id: string;
  question_id: string;
  text: string;
  note: string | null;
}

export interface ReportPayload {
  org_id: string;
  period: string;
  checklist: { id: string; version: string };
  total: RatioPayload | null;
  sections: SectionScorePayload[];
  findings: FindingPayload[];
}

export interface TrendPointPayload {
  period: string;
  total: RatioPayload | null;
  sections: { id: string; score: RatioPayload | null }[];
}

export interface TrendPayload {
  org_id: string;
  checklist_id: string | null;
  points: TrendPointPayload[];
}

export interface QuestionPayload {
  id: string;
  text: string;
  guidance?: string;
}

export interface ChecklistSectionPayload {
  id: string;
  title: string;
  dpv_concept?: string;
  questions: QuestionPayload[];
}

export interface ChecklistPayload {
  id: string;
  version: string;
  jurisdiction: string;
  title: string;
  sections: ChecklistSectionPayload[];
}

export interface ChecklistListPayload {
  checklists: { id: string; version: string; title: string }[];
}

export interface AnswerPayload {
  question_id: string;
  status: AnswerStatus;
  note?: string;
  evidence_uri?: string;
}

export interface AssessmentPayload {
  org_id: string;
  checklist_id: string;
  checklist_version: string;
  period: string;
  submitted_at: string;
  answers: AnswerPayload[];
}

export interface IssuePayload {
  code: string;
  path: string;
  message: string;
}

export interface ApiErrorPayload {
  status: number;
  code: string;
  message: string;
  details?: IssuePayload[];
}
