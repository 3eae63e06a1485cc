import { describe, expect, it } from "vitest";

import { ApiError, ComplianceApi } from "../src/api.js";
import { fakeFetch, MINI_REPORT } from "./fixtures.js";

describe("ComplianceApi", () => {
  it("fetches and decodes payloads", async () => {
    const api = new ComplianceApi(
      "http://service",
      fakeFetch({ "GET /v1/orgs/orgA/report/2019-01": { body: MINI_REPORT } }),
    );
    const report = await api.getReport("orgA", "2019-01");
    expect(report.total?.percent).toBe(67);
  });

  it("throws ApiError carrying the server's error object", async () => {
    const payload = {
      status: 400,
      code: "invalid-assessment",
      message: "assessment does not validate against its checklist",
      details: [{ code: "missing-answer", path: "answers.a-2", message: "no answer for question 'a-2'" }],
    };
    const api = new ComplianceApi(
      "http://service",
      fakeFetch({ "POST /v1/orgs/orgA/assessments": { status: 400, body: payload } }),
    );
    const error = await api
      .submitAssessment("orgA", { answers: [] } as never)
      .then(() => null)
      .catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).code).toBe("invalid-assessment");
    expect((error as ApiError).details).toEqual(payload.details);
  });

  it("defaults details to an empty list", async () => {
    const api = new ComplianceApi(
      "http://service",
      fakeFetch({ "GET /v1/orgs/ghost/report/2019-01": { status: 404, body: { status: 404, code: "not-found", message: "no" } } }),
    );
    const error = (await api.getReport("ghost", "2019-01").catch((e: unknown) => e)) as ApiError;
    expect(error.details).toEqual([]);
  });

  it("wraps non-JSON error bodies instead of crashing", async () => {
    const broken = async () =>
      ({ ok: false, status: 502, text: async () => "bad gateway" }) as Response;
    const api = new ComplianceApi("http://service", broken);
    const error = (await api.getTrend("orgA").catch((e: unknown) => e)) as ApiError;
    expect(error.code).toBe("unexpected");
    expect(error.payload.status).toBe(502);
  });

  it("percent-encodes identifiers in paths", async () => {
    const calls: { method: string; path: string }[] = [];
    const api = new ComplianceApi(
      "http://service",
      fakeFetch({ "GET /v1/orgs/acme%20gmbh/trend": { body: { org_id: "acme gmbh", checklist_id: null, points: [] } } }, calls),
    );
    await api.getTrend("acme gmbh");
    expect(calls[0]?.path).toBe("/v1/orgs/acme%20gmbh/trend");
  });
});
