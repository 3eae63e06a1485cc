import type {
  ApiErrorPayload,
  AssessmentPayload,
  ChecklistListPayload,
  ChecklistPayload,
  ReportPayload,
  TrendPayload,
} from "./types.js";

/** A non-2xx response; carries the server's error object verbatim. */
export class ApiError extends Error {
  constructor(readonly payload: ApiErrorPayload) {
    super(payload.message);
    this.name = "ApiError";
  }

  get code(): string {
    return this.payload.code;
  }

  get details() {
    return this.payload.details ?? [];
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ComplianceApi {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const text = await response.text();
    if (!response.ok) {
      let payload: ApiErrorPayload;
      try {
        payload = JSON.parse(text) as ApiErrorPayload;
      } catch {
        payload = { status: response.status, code: "unexpected", message: text };
      }
      throw new ApiError(payload);
    }
    return JSON.parse(text) as T;
  }

  listChecklists(): Promise<ChecklistListPayload> {
    return this.request("/v1/checklists");
  }

  getChecklist(id: string, version: string): Promise<ChecklistPayload> {
    return this.request(`/v1/checklists/${encodeURIComponent(id)}/${encodeURIComponent(version)}`);
  }

  registerChecklist(document: ChecklistPayload): Promise<{ id: string; version: string }> {
    return this.request(
      `/v1/checklists/${encodeURIComponent(document.id)}/${encodeURIComponent(document.version)}`,
      { method: "PUT", headers: { "content-type": "application/json" }, body: JSON.stringify(document) },
    );
  }

  getReport(org: string, period: string): Promise<ReportPayload> {
    return this.request(`/v1/orgs/${encodeURIComponent(org)}/report/${encodeURIComponent(period)}`);
  }

  getTrend(org: string): Promise<TrendPayload> {
    return this.request(`/v1/orgs/${encodeURIComponent(org)}/trend`);
  }

  getAssessment(org: string, period: string): Promise<AssessmentPayload> {
    return this.request(`/v1/orgs/${encodeURIComponent(org)}/assessments/${encodeURIComponent(period)}`);
  }

  submitAssessment(org: string, body: AssessmentPayload): Promise<{ revision: number }> {
    return this.request(`/v1/orgs/${encodeURIComponent(org)}/assessments`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }
}
