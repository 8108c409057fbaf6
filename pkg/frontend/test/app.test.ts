import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { App, AppElements } from "../src/app.js";
import { ChatbotClient } from "../src/api.js";

const CONVERSATION = {
  conversation_id: "c1",
  monitor_level: "real",
  monitor_url: "", // no streams in these tests
  monitor_sessions: {},
  floor: { width: 2, height: 2, objects: [] },
};

function buildDom(): AppElements {
  document.body.innerHTML = `
    <span id="level-badge"></span>
    <select id="level-select"><option value="real" selected>real</option><option value="none">none</option></select>
    <span id="level-warning"></span>
    <button id="new-conversation"></button>
    <div id="banner"></div>
    <div id="turns"></div>
    <form id="form"><input id="input" /></form>
    <div id="grid"></div>
    <div id="timeline"></div>`;
  const get = (id: string) => document.getElementById(id) as HTMLElement;
  return {
    turns: get("turns"),
    grid: get("grid"),
    timeline: get("timeline"),
    banner: get("banner"),
    input: get("input") as HTMLInputElement,
    form: get("form") as HTMLFormElement,
    levelBadge: get("level-badge"),
    levelSelect: get("level-select") as HTMLSelectElement,
    levelWarning: get("level-warning"),
    newConversation: get("new-conversation"),
  };
}

describe("App send behavior", () => {
  let elements: AppElements;
  let app: App;
  let messagePosts: number;
  let failNext: boolean;

  beforeEach(async () => {
    messagePosts = 0;
    failNext = false;
    vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
      const respond = (body: unknown) =>
        new Response(JSON.stringify(body), {
          status: 200,
          headers: { "content-type": "application/json" },
        });
      if (url.endsWith("/conversations") && init?.method === "POST") {
        return respond(CONVERSATION);
      }
      if (url.endsWith("/messages")) {
        messagePosts += 1;
        if (failNext) throw new TypeError("fetch failed");
        return respond({
          reply: "ok",
          intent: "add_object",
          confidence: 1,
          verdicts: [],
          message_verdict: "inconclusive",
          blocked: false,
          floor: CONVERSATION.floor,
        });
      }
      if (url.endsWith("/floor")) {
        return respond(CONVERSATION.floor);
      }
      throw new Error(`unexpected fetch ${url}`);
    });
    elements = buildDom();
    app = new App(elements, new ChatbotClient(""));
    await app.start();
  });

  afterEach(() => {
    vi.unstubAllGlobals();
  });

  it("empty input sends no request", async () => {
    elements.input.value = "   ";
    await app.send();
    expect(messagePosts).toBe(0);
    expect(app.state.turns).toHaveLength(0);
  });

  it("clears the input after a successful send", async () => {
    elements.input.value = "Add a table";
    await app.send();
    expect(messagePosts).toBe(1);
    expect(elements.input.value).toBe("");
    expect(app.state.turns.map((t) => t.role)).toEqual(["user", "bot"]);
  });

  it("network failure shows a banner and preserves the input", async () => {
    failNext = true;
    elements.input.value = "Add a table";
    await app.send();
    expect(elements.input.value).toBe("Add a table");
    expect(elements.banner.textContent).toContain("network failure");
    // the optimistic user turn was rolled back; a retry won't duplicate it
    expect(app.state.turns).toHaveLength(0);
    failNext = false;
    await app.send();
    expect(app.state.turns).toHaveLength(2);
    expect(elements.banner.textContent).toBe("");
  });

  it("toolbar warns when the selector differs from the served level", () => {
    elements.levelSelect.value = "none";
    app.renderToolbar();
    expect(elements.levelWarning.textContent).toContain("--monitor none");
    elements.levelSelect.value = "real";
    app.renderToolbar();
    expect(elements.levelWarning.textContent).toBe("");
  });
});
