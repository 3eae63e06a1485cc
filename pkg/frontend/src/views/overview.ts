/** Layer 1: headline total and the score trend across periods. */

import { percentLabel } from "../format.js";
import type { ReportPayload, TrendPayload } from "../types.js";

export interface OverviewHandlers {
  onShowSections(): void;
}

export function renderOverview(
  container: HTMLElement,
  report: ReportPayload | null,
  trend: TrendPayload,
  handlers: OverviewHandlers,
): void {
  container.replaceChildren();
  const heading = document.createElement("h2");
  heading.textContent = "Overview";
  container.append(heading);

  if (trend.points.length === 0 && report === null) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No assessments submitted yet.";
    container.append(empty);
    return;
  }

  if (report !== null) {
    const total = document.createElement("p");
    total.className = "total-score";
    total.textContent = `Total compliance: ${percentLabel(report.total)}`;
    container.append(total);
  }

  container.append(renderTrendChart(trend));

  const drill = document.createElement("button");
  drill.type = "button";
  drill.className = "drill-sections";
  drill.textContent = "View sections";
  drill.addEventListener("click", () => handlers.onShowSections());
  container.append(drill);
}

function renderTrendChart(trend: TrendPayload): HTMLElement {
  const figure = document.createElement("figure");
  figure.className = "trend-chart";

  const width = 360;
  const height = 120;
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("role", "img");

  const points = trend.points;
  const step = points.length > 1 ? width / (points.length - 1) : 0;
  const coords = points.map((point, i) => {
    const percent = point.total?.percent ?? 0;
    const x = points.length > 1 ? i * step : width / 2;
    const y = height - (percent / 100) * height;
    return `${x.toFixed(1)},${y.toFixed(1)}`;
  });

  const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
  line.setAttribute("points", coords.join(" "));
  line.setAttribute("fill", "none");
  line.setAttribute("stroke", "currentColor");
  line.setAttribute("stroke-width", "2");
  svg.append(line);
  figure.append(svg);

  const caption = document.createElement("figcaption");
  const labels = points.map((point) => `${point.period}: ${percentLabel(point.total)}`);
  caption.textContent = labels.join("  ");
  figure.append(caption);
  return figure;
}
