import { ComplianceApi } from "./api.js";
import { DashboardApp } from "./app.js";

function apiBase(): string {
  const meta = document.querySelector<HTMLMetaElement>('meta[name="api-base"]');
  return meta?.content ?? "";
}

function main(): void {
  const view = document.querySelector<HTMLElement>("#view");
  const entry = document.querySelector<HTMLElement>("#entry");
  const form = document.querySelector<HTMLFormElement>("#context-form");
  if (!view || !form) {
    throw new Error("dashboard shell is missing #view or #context-form");
  }

  const api = new ComplianceApi(apiBase());
  const app = new DashboardApp(api, view, entry);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const org = String(data.get("org") ?? "").trim();
    const period = String(data.get("period") ?? "").trim();
    if (org && period) {
      void app.load(org, period);
    }
  });

  const entryButton = document.querySelector<HTMLButtonElement>("#open-entry");
  entryButton?.addEventListener("click", () => {
    void (async () => {
      const checklists = await api.listChecklists();
      const first = checklists.checklists[0];
      if (first) {
        await app.openEntryForm(first.id, first.version);
      }
    })();
  });
}

main();
