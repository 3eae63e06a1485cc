/** Wires the three-layer drill-down and the entry form to the API client.
 * All numbers displayed anywhere come from API payloads. */

import { ApiError, type ComplianceApi } from "./api.js";
import {
  initialState,
  selectContext,
  showFindings,
  showOverview,
  showSections,
  type UiState,
} from "./state.js";
import type { ReportPayload, TrendPayload } from "./types.js";
import { renderEntryForm } from "./views/entry.js";
import { renderFindings } from "./views/findings.js";
import { renderOverview } from "./views/overview.js";
import { renderSections } from "./views/sections.js";

export class DashboardApp {
  private state: UiState = initialState();
  private report: ReportPayload | null = null;
  private trend: TrendPayload = { org_id: "", checklist_id: null, points: [] };

  constructor(
    private readonly api: ComplianceApi,
    private readonly viewContainer: HTMLElement,
    private readonly entryContainer: HTMLElement | null = null,
  ) {}

  /** Load one organisation and period, then render the overview layer. */
  async load(org: string, period: string): Promise<void> {
    this.state = selectContext(this.state, org, period);
    this.trend = await this.api.getTrend(org);
    try {
      this.report = await this.api.getReport(org, period);
    } catch (error) {
      if (error instanceof ApiError && error.payload.status === 404) {
        this.report = null;
      } else {
        throw error;
      }
    }
    this.state = showOverview(this.state);
    this.render();
  }

  async openEntryForm(checklistId: string, version: string): Promise<void> {
    if (!this.entryContainer) {
      throw new Error("no entry container configured");
    }
    const org = this.state.org;
    const period = this.state.period;
    if (!org || !period) {
      throw new Error("select an organisation and period first");
    }
    const checklist = await this.api.getChecklist(checklistId, version);
    let existing = null;
    try {
      existing = await this.api.getAssessment(org, period);
    } catch (error) {
      if (!(error instanceof ApiError && error.payload.status === 404)) {
        throw error;
      }
    }
    renderEntryForm(this.entryContainer, {
      checklist,
      org,
      period,
      existing,
      submit: (body) => this.api.submitAssessment(org, body),
      onSubmitted: () => void this.load(org, period),
    });
  }

  toOverview(): void {
    this.state = showOverview(this.state);
    this.render();
  }

  toSections(): void {
    this.state = showSections(this.state);
    this.render();
  }

  toFindings(sectionId: string): void {
    this.state = showFindings(this.state, sectionId);
    this.render();
  }

  get currentState(): UiState {
    return this.state;
  }

  render(): void {
    const layer = this.state.layer;
    if (layer.kind === "overview") {
      renderOverview(this.viewContainer, this.report, this.trend, {
        onShowSections: () => this.toSections(),
      });
      return;
    }
    if (this.report === null) {
      // deeper layers need a report; fall back to the overview empty state
      renderOverview(this.viewContainer, null, this.trend, {
        onShowSections: () => this.toSections(),
      });
      return;
    }
    if (layer.kind === "sections") {
      renderSections(this.viewContainer, this.report, {
        onDrilldown: (sectionId) => this.toFindings(sectionId),
      });
    } else {
      renderFindings(this.viewContainer, this.report, layer.sectionId, {
        onBack: () => this.toSections(),
      });
    }
  }
}
