/** UI state and its transitions, kept pure so they can be tested directly.
 *
 * The three layers mirror the drill-down: overview (total and trend),
 * sections (one bar per regulatory section) and findings (one section's
 * non-compliant answers). Layer changes never touch the selected
 * organisation or period, and the findings layer can only be entered with
 * an explicit section.
 */

import type { AnswerStatus, AssessmentPayload, ChecklistPayload } from "./types.js";

export type Layer =
  | { kind: "overview" }
  | { kind: "sections" }
  | { kind: "findings"; sectionId: string };

export interface DraftAnswer {
  status: AnswerStatus | null;
  note: string;
}

export interface UiState {
  org: string | null;
  period: string | null;
  layer: Layer;
  drafts: Record<string, DraftAnswer>;
}

export function initialState(): UiState {
  return { org: null, period: null, layer: { kind: "overview" }, drafts: {} };
}

export function selectContext(state: UiState, org: string, period: string): UiState {
  const unchanged = state.org === org && state.period === period;
  return {
    ...state,
    org,
    period,
    drafts: unchanged ? state.drafts : {},
  };
}

export function showOverview(state: UiState): UiState {
  return { ...state, layer: { kind: "overview" } };
}

export function showSections(state: UiState): UiState {
  return { ...state, layer: { kind: "sections" } };
}

export function showFindings(state: UiState, sectionId: string): UiState {
  return { ...state, layer: { kind: "findings", sectionId } };
}

export function questionIds(checklist: ChecklistPayload): Set<string> {
  const ids = new Set<string>();
  for (const section of checklist.sections) {
    for (const question of section.questions) {
      ids.add(question.id);
    }
  }
  return ids;
}

/** Update one draft answer. Unknown question ids are a programming error:
 * drafts may only reference questions of the loaded checklist. */
export function updateDraft(
  state: UiState,
  checklist: ChecklistPayload,
  questionId: string,
  patch: Partial<DraftAnswer>,
): UiState {
  if (!questionIds(checklist).has(questionId)) {
    throw new Error(`draft for unknown question ${questionId}`);
  }
  const current = state.drafts[questionId] ?? { status: null, note: "" };
  return { ...state, drafts: { ...state.drafts, [questionId]: { ...current, ...patch } } };
}

export function draftsFromAssessment(assessment: AssessmentPayload): Record<string, DraftAnswer> {
  const drafts: Record<string, DraftAnswer> = {};
  for (const answer of assessment.answers) {
    drafts[answer.question_id] = { status: answer.status, note: answer.note ?? "" };
  }
  return drafts;
}

export function missingAnswers(checklist: ChecklistPayload, drafts: Record<string, DraftAnswer>): string[] {
  const missing: string[] = [];
  for (const section of checklist.sections) {
    for (const question of section.questions) {
      if (!drafts[question.id] || drafts[question.id]?.status === null) {
        missing.push(question.id);
      }
    }
  }
  return missing;
}

export class IncompleteDraftError extends Error {
  constructor(readonly questionIds: string[]) {
    super(`unanswered questions: ${questionIds.join(", ")}`);
    this.name = "IncompleteDraftError";
  }
}

/** Build the submission body, answers in checklist order. Throws rather
 * than letting an incomplete form reach the API silently. */
export function assessmentBody(
  checklist: ChecklistPayload,
  org: string,
  period: string,
  drafts: Record<string, DraftAnswer>,
  submittedAt: string,
): AssessmentPayload {
  const missing = missingAnswers(checklist, drafts);
  if (missing.length > 0) {
    throw new IncompleteDraftError(missing);
  }
  const answers = [];
  for (const section of checklist.sections) {
    for (const question of section.questions) {
      const draft = drafts[question.id]!;
      answers.push({
        question_id: question.id,
        status: draft.status!,
        ...(draft.note.trim() !== "" ? { note: draft.note } : {}),
      });
    }
  }
  return {
    org_id: org,
    checklist_id: checklist.id,
    checklist_version: checklist.version,
    period,
    submitted_at: submittedAt,
    answers,
  };
}
