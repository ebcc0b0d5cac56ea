// Bootstrap: wire the wizard to the API and keep the session id in
// localStorage so a refresh resumes exactly where the server left off.

import { SessionApi } from "./api.js";
import { render } from "./render.js";
import { Wizard, stepForSession } from "./state.js";

const STORAGE_KEY = "bwmllsm-session-id";

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "http://127.0.0.1:8000";
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  const api = new SessionApi(apiBase());
  const wizard = new Wizard(api, (state) => {
    if (state.session) window.localStorage.setItem(STORAGE_KEY, state.session.id);
    render(root, state, wizard);
  });

  const saved = window.localStorage.getItem(STORAGE_KEY);
  if (saved) {
    await wizard.resume(saved);
    if (!wizard.state.session) window.localStorage.removeItem(STORAGE_KEY);
  }
  render(root, wizard.state, wizard);
}

void boot();

export { stepForSession };
