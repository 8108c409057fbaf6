import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, ChatbotClient, streamUrl, VerdictStream } from "../src/api.js";

afterEach(() => {
  vi.unstubAllGlobals();
});

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ChatbotClient", () => {
  it("posts messages with the expected body and parses the payload", async () => {
    const calls: Array<{ url: string; init?: RequestInit }> = [];
    vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
      calls.push({ url, init });
      return jsonResponse({ reply: "ok", verdicts: [] });
    });
    const client = new ChatbotClient("http://bot");
    const body = await client.sendMessage("c1", "Add a table");
    expect(calls[0].url).toBe("http://bot/conversations/c1/messages");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ text: "Add a table" });
    expect(body.reply).toBe("ok");
  });

  it("wraps HTTP errors with status codes", async () => {
    vi.stubGlobal("fetch", async () => jsonResponse({ error: "unknown_conversation" }, 404));
    const client = new ChatbotClient("");
    await expect(client.fetchFloor("ghost")).rejects.toMatchObject({ status: 404 });
  });

  it("wraps network failures as ApiError", async () => {
    vi.stubGlobal("fetch", async () => {
      throw new TypeError("fetch failed");
    });
    const client = new ChatbotClient("");
    await expect(client.createConversation()).rejects.toBeInstanceOf(ApiError);
  });
});

describe("streamUrl", () => {
  it("switches the scheme to websocket", () => {
    expect(streamUrl("http://127.0.0.1:8700", "abc")).toBe(
      "ws://127.0.0.1:8700/sessions/abc/stream",
    );
    expect(streamUrl("https://mon.example", "abc")).toBe(
      "wss://mon.example/sessions/abc/stream",
    );
  });
});

class FlakySocket {
  static created: FlakySocket[] = [];
  onopen: (() => void) | null = null;
  onmessage: ((event: { data: string }) => void) | null = null;
  onclose: (() => void) | null = null;
  onerror: (() => void) | null = null;

  constructor(readonly url: string) {
    FlakySocket.created.push(this);
  }

  close(): void {
    this.onclose?.();
    this.onclose = null;
  }
}

describe("VerdictStream", () => {
  it("reconnects after a drop and reports the gap once per drop", async () => {
    vi.useFakeTimers();
    FlakySocket.created = [];
    const gaps: number[] = [];
    const received: unknown[] = [];
    const stream = new VerdictStream(
      "ws://x/sessions/1/stream",
      {
        onMessage: (m) => received.push(m),
        onGap: () => gaps.push(Date.now()),
      },
      (url) => new FlakySocket(url) as unknown as WebSocket,
    );
    stream.start();
    expect(FlakySocket.created).toHaveLength(1);
    const first = FlakySocket.created[0];
    first.onopen?.();
    first.onmessage?.({ data: JSON.stringify({ type: "reset", generation: 0 }) });
    expect(received).toEqual([{ type: "reset", generation: 0 }]);

    first.close(); // server went away
    expect(gaps).toHaveLength(1);
    await vi.advanceTimersByTimeAsync(300);
    expect(FlakySocket.created).toHaveLength(2); // reconnected

    stream.stop();
    await vi.advanceTimersByTimeAsync(10_000);
    expect(FlakySocket.created).toHaveLength(2); // no reconnect after stop
    vi.useRealTimers();
  });
});
