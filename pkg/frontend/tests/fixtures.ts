/** Shared payload fixtures and a route-table fetch stand-in. */

import type {
  AssessmentPayload,
  ChecklistPayload,
  ReportPayload,
  TrendPayload,
} from "../src/types.js";

export const MINI_CHECKLIST: ChecklistPayload = {
  id: "mini",
  version: "1.0",
  jurisdiction: "EU",
  title: "Mini checklist",
  sections: [
    {
      id: "alpha",
      title: "Alpha",
      questions: [
        { id: "a-1", text: "First alpha question?" },
        { id: "a-2", text: "Second alpha question?" },
      ],
    },
    {
      id: "beta",
      title: "Beta",
      questions: [{ id: "b-1", text: "Only beta question?" }],
    },
  ],
};

export const MINI_REPORT: ReportPayload = {
  org_id: "orgA",
  period: "2019-01",
  checklist: { id: "mini", version: "1.0" },
  total: { compliant: 2, applicable: 3, percent: 67 },
  sections: [
    { id: "alpha", title: "Alpha", compliant: 1, applicable: 2, percent: 50 },
    { id: "beta", title: "Beta", compliant: 1, applicable: 1, percent: 100 },
  ],
  findings: [
    { section_id: "alpha", question_id: "a-2", text: "Second alpha question?", note: null },
  ],
};

export const MINI_TREND: TrendPayload = {
  org_id: "orgA",
  checklist_id: "mini",
  points: [
    {
      period: "2019-01",
      total: { compliant: 2, applicable: 3, percent: 67 },
      sections: [
        { id: "alpha", score: { compliant: 1, applicable: 2, percent: 50 } },
        { id: "beta", score: { compliant: 1, applicable: 1, percent: 100 } },
      ],
    },
  ],
};

export const MINI_ASSESSMENT: AssessmentPayload = {
  org_id: "orgA",
  checklist_id: "mini",
  checklist_version: "1.0",
  period: "2019-01",
  submitted_at: "2019-01-31T12:00:00Z",
  answers: [
    { question_id: "a-1", status: "compliant" },
    { question_id: "a-2", status: "non_compliant" },
    { question_id: "b-1", status: "compliant" },
  ],
};

export interface RouteTable {
  [pathAndMethod: string]: { status?: number; body: unknown } | undefined;
}

/** fetch stand-in driven by a "METHOD path" route table. */
export function fakeFetch(routes: RouteTable, calls?: { method: string; path: string; body?: unknown }[]) {
  return async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    calls?.push({
      method,
      path,
      body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    });
    const route = routes[`${method} ${path}`];
    if (!route) {
      return response(404, { status: 404, code: "not-found", message: `no route for ${method} ${path}` });
    }
    return response(route.status ?? 200, route.body);
  };
}

function response(status: number, body: unknown): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    text: async () => JSON.stringify(body),
  } as Response;
}
