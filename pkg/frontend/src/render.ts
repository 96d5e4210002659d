import type { ConsoleState } from "./state.js";
import type { Engagement, FeatureEntry } from "./types.js";

const GROUP_ORDER = ["responsiveness", "profile", "personality", "activity", "readiness"];

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function formatClock(ts: number): string {
  return new Date(ts * 1000).toISOString().replace("T", " ").slice(0, 16) + " UTC";
}

function formatValue(entry: FeatureEntry): string {
  if (entry.masked || entry.value === null) return "—";
  const v = entry.value;
  if (Number.isInteger(v)) return String(v);
  return Math.abs(v) >= 1000 ? v.toFixed(0) : v.toPrecision(4);
}

export function renderModeBar(state: ConsoleState): string {
  const buttons = (["manual", "auto", "mixed"] as const)
    .map(
      (m) =>
        `<button class="mode-btn${state.mode === m ? " active" : ""}" data-mode="${m}">${m}</button>`,
    )
    .join("");
  const rep = state.report;
  const stats = rep
    ? `sent ${rep.sent} · responded ${rep.responded} · rate ${(rep.response_rate * 100).toFixed(0)}%`
    : "";
  return `<div class="mode-bar">
    <span class="clock">${formatClock(state.now)}</span>
    ${buttons}
    <button class="tick-btn" data-seconds="3600">+1h</button>
    <button class="tick-btn" data-seconds="21600">+6h</button>
    <span class="stats">${stats}</span>
  </div>`;
}

export function renderStream(state: ConsoleState): string {
  if (!state.posts.length) {
    return `<div class="panel stream"><h2>Stream</h2><p class="empty">No matching posts yet. Advance the clock.</p></div>`;
  }
  const rows = [...state.posts]
    .sort((a, b) => b.timestamp - a.timestamp)
    .slice(0, 50)
    .map(
      (p) => `<li class="stream-row" data-user="${escapeHtml(p.author_id)}">
        <span class="who">@${escapeHtml(p.screen_name)}</span>
        <span class="when">${formatClock(p.timestamp)}</span>
        <span class="text">${escapeHtml(p.text)}</span>
      </li>`,
    )
    .join("");
  return `<div class="panel stream"><h2>Stream</h2><ul>${rows}</ul></div>`;
}

export function renderCandidates(state: ConsoleState): string {
  if (!state.candidates.length) {
    return `<div class="panel candidates"><h2>Candidates</h2><p class="empty">No rule-matched candidates.</p></div>`;
  }
  const rows = state.candidates
    .slice(0, 50)
    .map(
      (c) => `<li class="cand-row${c.user_id === state.selectedId ? " selected" : ""}${c.engaged ? " engaged" : ""}" data-user="${escapeHtml(c.user_id)}">
        <span class="rank">#${c.rank}</span>
        <span class="who">@${escapeHtml(c.screen_name)}</span>
        <span class="prob">${(c.probability * 100).toFixed(1)}%</span>
        ${c.engaged ? '<span class="badge">engaged</span>' : ""}
      </li>`,
    )
    .join("");
  return `<div class="panel candidates"><h2>Candidates</h2><ul>${rows}</ul></div>`;
}

export function renderFeatureGroups(features: FeatureEntry[]): string {
  const groups = new Map<string, FeatureEntry[]>();
  for (const entry of features) {
    const list = groups.get(entry.group) ?? [];
    list.push(entry);
    groups.set(entry.group, list);
  }
  return GROUP_ORDER.filter((g) => groups.has(g))
    .map((g) => {
      const rows = groups
        .get(g)!
        .map(
          (f) =>
            `<tr class="feature${f.masked ? " masked" : ""}"><td>${escapeHtml(f.name)}</td><td>${formatValue(f)}</td></tr>`,
        )
        .join("");
      return `<section class="feature-group" data-group="${g}">
        <h3>${g} (${groups.get(g)!.length})</h3>
        <table>${rows}</table>
      </section>`;
    })
    .join("");
}

export function renderProfile(state: ConsoleState): string {
  const p = state.profile;
  if (!p) {
    return `<div class="panel profile"><h2>Profile</h2><p class="empty">Select a candidate to inspect.</p></div>`;
  }
  const posts = p.recent_posts
    .slice()
    .reverse()
    .map((post) => `<li>${escapeHtml(post.text)}</li>`)
    .join("");
  return `<div class="panel profile">
    <h2>@${escapeHtml(p.screen_name)}</h2>
    <p class="bio">${escapeHtml(p.profile_text)}</p>
    <p class="score">response probability <strong>${(p.probability * 100).toFixed(1)}%</strong>
      ${p.rank !== null ? `· rank #${p.rank}` : ""}</p>
    <h3>Recent posts</h3>
    <ul class="recent">${posts}</ul>
    <h3>Features (${p.features.length})</h3>
    ${renderFeatureGroups(p.features)}
  </div>`;
}

export function renderCompose(state: ConsoleState): string {
  const disabled = state.mode === "auto" ? "disabled" : "";
  const target = state.selectedId ? escapeHtml(state.selectedId) : "";
  const warning = state.warning
    ? `<p class="warning" role="alert">${escapeHtml(state.warning)}</p>`
    : "";
  const recommendation = state.recommendation
    ? renderRecommendation(state)
    : "";
  return `<div class="panel compose">
    <h2>Engage</h2>
    ${warning}
    <form id="engage-form">
      <label>Target <input name="user_id" value="${target}" ${disabled}></label>
      <label>Question <textarea name="question" ${disabled}>How long is the wait at the airport right now?</textarea></label>
      <button type="submit" ${disabled}>Send</button>
      ${state.mode === "auto" ? '<p class="note">Automation owns sending in auto mode.</p>' : ""}
    </form>
    <button id="refresh-recommendation">Refresh recommendation</button>
    ${recommendation}
    ${renderEngagements(state.engagements)}
  </div>`;
}

export function renderRecommendation(state: ConsoleState): string {
  const rec = state.recommendation;
  if (!rec) return "";
  const rows = rec.selected
    .map(
      (c) => `<li>
        <span class="who">@${escapeHtml(c.screen_name)}</span>
        <span class="prob">${(c.probability * 100).toFixed(1)}%</span>
        <button class="approve-btn" data-user="${escapeHtml(c.user_id)}">Approve</button>
      </li>`,
    )
    .join("");
  return `<section class="recommendation">
    <h3>Recommended (train ranks ${rec.train_interval[0]}–${rec.train_interval[1]},
      train rate ${(rec.train_rate * 100).toFixed(0)}%)</h3>
    <ul>${rows}</ul>
  </section>`;
}

export function renderEngagements(engagements: Engagement[]): string {
  if (!engagements.length) {
    return `<section class="engagements"><h3>Engagement log</h3><p class="empty">Nothing sent yet.</p></section>`;
  }
  const rows = engagements
    .map((e) => {
      const answer =
        e.status === "responded"
          ? `<span class="response">${escapeHtml(e.response_text ?? "")}</span>`
          : `<span class="status ${e.status}">${e.status.replace("_", " ")}</span>`;
      return `<li class="engagement ${e.status}">
        <span class="who">@${escapeHtml(e.screen_name)}</span>
        <span class="question">${escapeHtml(e.question)}</span>
        ${answer}
      </li>`;
    })
    .join("");
  return `<section class="engagements"><h3>Engagement log</h3><ul>${rows}</ul></section>`;
}

export function renderApp(state: ConsoleState): string {
  return `${renderModeBar(state)}
  <main class="columns">
    ${renderStream(state)}
    <div class="middle">${renderCandidates(state)}${renderProfile(state)}</div>
    ${renderCompose(state)}
  </main>`;
}
