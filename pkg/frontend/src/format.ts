/** Display fidelity: percent strings come from the API's integer "percent"
 * field verbatim; nothing is rounded or recomputed in the browser. */

export function percentLabel(entry: { percent: number } | null): string {
  if (entry === null || entry.percent === null) {
    return "not assessed";
  }
  return `${entry.percent}%`;
}

export function percentFromNullable(percent: number | null): string {
  return percent === null ? "not assessed" : `${percent}%`;
}
