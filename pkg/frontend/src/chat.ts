// Chat pane rendering: user/bot bubbles with per-property verdict badges.

import type { ChatTurn } from "./state.js";
import { falseExplanation } from "./state.js";

export function renderTurns(container: HTMLElement, turns: ChatTurn[]): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  for (const turn of turns) {
    const bubble = doc.createElement("div");
    bubble.className = `turn ${turn.role}${turn.blocked ? " blocked" : ""}`;

    const text = doc.createElement("div");
    text.className = "text";
    text.textContent = turn.text;
    bubble.appendChild(text);

    if (turn.role === "bot" && turn.verdicts.length > 0) {
      const badges = doc.createElement("div");
      badges.className = "badges";
      for (const verdict of turn.verdicts) {
        const badge = doc.createElement("span");
        badge.className = `badge verdict-${verdict.verdict}`;
        badge.textContent = `${verdict.property}/${verdict.stage}: ${verdict.verdict}`;
        badges.appendChild(badge);
      }
      bubble.appendChild(badges);

      const explanation = falseExplanation(turn);
      if (explanation) {
        const note = doc.createElement("div");
        note.className = "explanation";
        note.textContent = explanation;
        bubble.appendChild(note);
      }
    }
    container.appendChild(bubble);
  }
  container.scrollTop = container.scrollHeight;
}
