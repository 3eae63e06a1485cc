/** Layer 2: one bar per regulatory section, labeled with the API's percent
 * value. Clicking a bar drills into that section's findings. */

import { percentFromNullable } from "../format.js";
import type { ReportPayload } from "../types.js";

export interface SectionsHandlers {
  onDrilldown(sectionId: string): void;
}

export function renderSections(
  container: HTMLElement,
  report: ReportPayload,
  handlers: SectionsHandlers,
): void {
  container.replaceChildren();
  const heading = document.createElement("h2");
  heading.textContent = "Sections";
  container.append(heading);

  const list = document.createElement("ul");
  list.className = "section-bars";
  for (const section of report.sections) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.type = "button";
    button.className = "section-bar";
    button.dataset.sectionId = section.id;
    button.addEventListener("click", () => handlers.onDrilldown(section.id));

    const bar = document.createElement("span");
    bar.className = "bar-fill";
    bar.style.width = `${section.percent ?? 0}%`;
    button.append(bar);

    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = `${section.title}: ${percentFromNullable(section.percent)}`;
    button.append(label);

    item.append(button);
    list.append(item);
  }
  container.append(list);
}
