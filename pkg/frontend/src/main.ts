import { ApiClient } from "./api.js";
import { renderApp } from "./render.js";
import { ConsoleController } from "./state.js";
import type { Mode } from "./types.js";

const POLL_INTERVAL_MS = 2000;

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "";
}

const controller = new ConsoleController(new ApiClient(apiBase()));
const root = document.getElementById("app")!;

function paint(): void {
  root.innerHTML = renderApp(controller.state);
}

async function act(fn: () => Promise<void>): Promise<void> {
  try {
    await fn();
  } catch (err) {
    controller.state = {
      ...controller.state,
      warning: err instanceof Error ? err.message : String(err),
    };
  }
  paint();
}

root.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const modeBtn = target.closest<HTMLElement>(".mode-btn");
  if (modeBtn) {
    void act(() => controller.setMode(modeBtn.dataset.mode as Mode));
    return;
  }
  const tickBtn = target.closest<HTMLElement>(".tick-btn");
  if (tickBtn) {
    void act(() => controller.tick(Number(tickBtn.dataset.seconds)));
    return;
  }
  const row = target.closest<HTMLElement>(".cand-row, .stream-row");
  if (row?.dataset.user) {
    void act(() => controller.select(row.dataset.user!));
    return;
  }
  if (target.id === "refresh-recommendation") {
    void act(() => controller.refreshRecommendation());
    return;
  }
  const approve = target.closest<HTMLElement>(".approve-btn");
  if (approve?.dataset.user) {
    const question = "Quick question: how long is the wait right now?";
    void act(() => controller.engage(approve.dataset.user!, question));
  }
});

root.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  if (form.id !== "engage-form") return;
  event.preventDefault();
  const data = new FormData(form);
  const userId = String(data.get("user_id") ?? "").trim();
  const question = String(data.get("question") ?? "").trim();
  if (!userId || !question) return;
  void act(() => controller.engage(userId, question));
});

async function loop(): Promise<void> {
  try {
    await controller.poll();
  } catch {
    controller.state = { ...controller.state, warning: "service unreachable, retrying" };
  }
  paint();
}

void loop();
setInterval(loop, POLL_INTERVAL_MS);
