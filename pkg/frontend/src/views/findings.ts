/** Layer 3: the non-compliant answers of one section, with question texts.
 * Only reachable through a section bar, and only shows that section. */

import { percentFromNullable } from "../format.js";
import type { ReportPayload } from "../types.js";

export interface FindingsHandlers {
  onBack(): void;
}

export function renderFindings(
  container: HTMLElement,
  report: ReportPayload,
  sectionId: string,
  handlers: FindingsHandlers,
): void {
  container.replaceChildren();
  const section = report.sections.find((s) => s.id === sectionId);
  const heading = document.createElement("h2");
  heading.textContent = section ? `${section.title} findings` : "Findings";
  container.append(heading);

  if (section) {
    const summary = document.createElement("p");
    summary.className = "section-summary";
    summary.textContent =
      `${section.compliant} of ${section.applicable} applicable questions compliant ` +
      `(${percentFromNullable(section.percent)})`;
    container.append(summary);
  }

  const relevant = report.findings.filter((finding) => finding.section_id === sectionId);
  if (relevant.length === 0) {
    const clean = document.createElement("p");
    clean.className = "empty-state";
    clean.textContent = "No findings in this section.";
    container.append(clean);
  } else {
    const list = document.createElement("ul");
    list.className = "findings-list";
    for (const finding of relevant) {
      const item = document.createElement("li");
      item.className = "finding";
      item.dataset.questionId = finding.question_id;

      const text = document.createElement("span");
      text.className = "finding-text";
      text.textContent = finding.text;
      item.append(text);

      const status = document.createElement("span");
      status.className = "finding-status";
      status.textContent = "non-compliant";
      item.append(status);

      if (finding.note) {
        const note = document.createElement("span");
        note.className = "finding-note";
        note.textContent = finding.note;
        item.append(note);
      }
      list.append(item);
    }
    container.append(list);
  }

  const back = document.createElement("button");
  back.type = "button";
  back.className = "back-to-sections";
  back.textContent = "Back to sections";
  back.addEventListener("click", () => handlers.onBack());
  container.append(back);
}
