/** Assessment entry form: sections in checklist order, every question with
 * exactly the three status choices and a note field. Incomplete forms never
 * reach the API; server-side validation errors land inline beside the
 * question they concern. */

import { ApiError } from "../api.js";
import {
  assessmentBody,
  draftsFromAssessment,
  IncompleteDraftError,
  updateDraft,
  type DraftAnswer,
  type UiState,
} from "../state.js";
import type { AnswerStatus, AssessmentPayload, ChecklistPayload, IssuePayload } from "../types.js";

const STATUS_CHOICES: { value: AnswerStatus; label: string }[] = [
  { value: "compliant", label: "Compliant" },
  { value: "non_compliant", label: "Non-compliant" },
  { value: "not_applicable", label: "Not applicable" },
];

export interface EntryOptions {
  checklist: ChecklistPayload;
  org: string;
  period: string;
  existing: AssessmentPayload | null;
  submit(body: AssessmentPayload): Promise<{ revision: number }>;
  onSubmitted?(revision: number): void;
  now?(): string;
}

export function renderEntryForm(container: HTMLElement, options: EntryOptions): void {
  const { checklist } = options;
  let state: UiState = {
    org: options.org,
    period: options.period,
    layer: { kind: "overview" },
    drafts: options.existing ? draftsFromAssessment(options.existing) : {},
  };

  container.replaceChildren();
  const form = document.createElement("form");
  form.className = "assessment-entry";
  form.noValidate = true;

  const banner = document.createElement("p");
  banner.className = "entry-banner";
  banner.hidden = true;

  for (const section of checklist.sections) {
    const fieldset = document.createElement("fieldset");
    fieldset.dataset.sectionId = section.id;
    const legend = document.createElement("legend");
    legend.textContent = section.title;
    fieldset.append(legend);

    for (const question of section.questions) {
      fieldset.append(renderQuestionRow(question.id, question.text, state.drafts[question.id], {
        onStatus: (status) => {
          state = updateDraft(state, checklist, question.id, { status });
        },
        onNote: (note) => {
          state = updateDraft(state, checklist, question.id, { note });
        },
      }));
    }
    form.append(fieldset);
  }

  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Submit assessment";
  form.append(submit);
  form.append(banner);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void handleSubmit();
  });

  async function handleSubmit(): Promise<void> {
    clearInlineErrors(form);
    banner.hidden = true;
    let body: AssessmentPayload;
    try {
      body = assessmentBody(checklist, options.org, options.period, state.drafts, timestamp());
    } catch (error) {
      if (error instanceof IncompleteDraftError) {
        for (const questionId of error.questionIds) {
          setInlineError(form, questionId, "answer required");
        }
        showBanner("error", `${error.questionIds.length} question(s) still unanswered.`);
        return;
      }
      throw error;
    }
    try {
      const result = await options.submit(body);
      showBanner("success", `Submitted. Revision ${result.revision}.`);
      options.onSubmitted?.(result.revision);
    } catch (error) {
      if (error instanceof ApiError) {
        let placed = 0;
        for (const issue of error.details) {
          const questionId = questionIdFromIssue(issue);
          if (questionId) {
            setInlineError(form, questionId, `${issue.code}: ${issue.message}`);
            placed += 1;
          }
        }
        showBanner("error", placed > 0 ? error.message : `${error.code}: ${error.message}`);
        return;
      }
      throw error;
    }
  }

  function timestamp(): string {
    return options.now ? options.now() : new Date().toISOString().replace(/\.\d+Z$/, "Z");
  }

  function showBanner(kind: "success" | "error", message: string): void {
    banner.hidden = false;
    banner.dataset.kind = kind;
    banner.textContent = message;
  }

  container.append(form);

  interface RowHandlers {
    onStatus(status: AnswerStatus): void;
    onNote(note: string): void;
  }

  function renderQuestionRow(
    questionId: string,
    text: string,
    draft: DraftAnswer | undefined,
    handlers: RowHandlers,
  ): HTMLElement {
    const row = document.createElement("div");
    row.className = "question-row";
    row.dataset.questionId = questionId;

    const label = document.createElement("p");
    label.className = "question-text";
    label.textContent = text;
    row.append(label);

    const choices = document.createElement("div");
    choices.className = "status-choices";
    for (const choice of STATUS_CHOICES) {
      const wrapper = document.createElement("label");
      const input = document.createElement("input");
      input.type = "radio";
      input.name = `status-${questionId}`;
      input.value = choice.value;
      input.checked = draft?.status === choice.value;
      input.addEventListener("change", () => handlers.onStatus(choice.value));
      wrapper.append(input, document.createTextNode(choice.label));
      choices.append(wrapper);
    }
    row.append(choices);

    const note = document.createElement("input");
    note.type = "text";
    note.className = "note-field";
    note.placeholder = "Note (optional)";
    note.value = draft?.note ?? "";
    note.addEventListener("input", () => handlers.onNote(note.value));
    row.append(note);

    const error = document.createElement("span");
    error.className = "inline-error";
    error.hidden = true;
    row.append(error);
    return row;
  }
}

function questionIdFromIssue(issue: IssuePayload): string | null {
  // validation issue paths look like "answers.<question-id>" or "answers[3]"
  const match = /^answers\.(.+)$/.exec(issue.path);
  return match ? match[1]! : null;
}

function setInlineError(form: HTMLElement, questionId: string, message: string): void {
  const row = form.querySelector<HTMLElement>(`[data-question-id="${questionId}"]`);
  const slot = row?.querySelector<HTMLElement>(".inline-error");
  if (slot) {
    slot.hidden = false;
    slot.textContent = message;
  }
}

function clearInlineErrors(form: HTMLElement): void {
  for (const slot of form.querySelectorAll<HTMLElement>(".inline-error")) {
    slot.hidden = true;
    slot.textContent = "";
  }
}
