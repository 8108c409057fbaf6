// Verdict timeline: every (event, verdict) pair streamed by the monitor,
// interleaved across properties, in arrival order.

import type { TimelineItem } from "./state.js";

export function renderTimeline(container: HTMLElement, items: TimelineItem[]): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  for (const item of items) {
    const row = doc.createElement("div");
    if (item.kind === "gap") {
      row.className = "timeline-row gap";
      row.textContent = `${item.property}: ${item.detail}`;
    } else {
      row.className = `timeline-row verdict-${item.verdict}`;
      row.dataset["property"] = item.property;
      row.dataset["kind"] = item.kind;
      row.dataset["index"] = String(item.index);
      const label = doc.createElement("span");
      label.className = "event";
      label.textContent = `${item.property} #${item.index} ${item.kind} ${item.detail}`;
      const verdict = doc.createElement("span");
      verdict.className = "verdict";
      verdict.textContent = item.verdict;
      if (item.explanation) verdict.title = item.explanation;
      row.append(label, verdict);
    }
    container.appendChild(row);
  }
  container.scrollTop = container.scrollHeight;
}
