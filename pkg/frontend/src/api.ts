// HTTP client for the chatbot service and a reconnecting subscription to the
// monitor's per-session verdict stream.

import type { ConversationInfo, Floor, MessageResponse, StreamMessage } from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

async function requestJson<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(`network failure: ${String(err)}`);
  }
  if (!response.ok) {
    const body = await response.text().catch(() => "");
    throw new ApiError(`${response.status} from ${url}: ${body.slice(0, 200)}`, response.status);
  }
  return (await response.json()) as T;
}

export class ChatbotClient {
  constructor(readonly baseUrl: string = "") {}

  health(): Promise<{ status: string; monitor_level: string; properties: string[] }> {
    return requestJson(`${this.baseUrl}/health`);
  }

  createConversation(): Promise<ConversationInfo> {
    return requestJson(`${this.baseUrl}/conversations`, { method: "POST" });
  }

  sendMessage(conversationId: string, text: string): Promise<MessageResponse> {
    return requestJson(`${this.baseUrl}/conversations/${conversationId}/messages`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  fetchFloor(conversationId: string): Promise<Floor> {
    return requestJson(`${this.baseUrl}/conversations/${conversationId}/floor`);
  }
}

export interface VerdictStreamHandlers {
  onMessage(message: StreamMessage): void;
  /** Called when the socket drops and a reconnect is scheduled. */
  onGap(): void;
}

export type WebSocketFactory = (url: string) => WebSocket;

const BACKOFF_START_MS = 250;
const BACKOFF_MAX_MS = 5_000;

/** Follows one monitor session's (event, verdict) log over the duplex
 * channel, reconnecting with exponential backoff.  Duplicate suppression is
 * the consumer's job: entries carry (generation, index). */
export class VerdictStream {
  private socket: WebSocket | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private backoffMs = BACKOFF_START_MS;
  private closed = false;

  constructor(
    readonly url: string,
    readonly handlers: VerdictStreamHandlers,
    private readonly factory: WebSocketFactory = (u) => new WebSocket(u),
  ) {}

  start(): void {
    this.closed = false;
    this.connect();
  }

  stop(): void {
    this.closed = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.socket?.close();
    this.socket = null;
  }

  private connect(): void {
    if (this.closed) return;
    let socket: WebSocket;
    try {
      socket = this.factory(this.url);
    } catch {
      this.scheduleReconnect();
      return;
    }
    this.socket = socket;
    socket.onopen = () => {
      this.backoffMs = BACKOFF_START_MS;
    };
    socket.onmessage = (event: MessageEvent) => {
      try {
        this.handlers.onMessage(JSON.parse(String(event.data)) as StreamMessage);
      } catch {
        // a malformed frame is a server bug; drop it rather than dying
      }
    };
    socket.onclose = () => {
      if (!this.closed) this.scheduleReconnect();
    };
    socket.onerror = () => {
      socket.close();
    };
  }

  private scheduleReconnect(): void {
    this.handlers.onGap();
    this.timer = setTimeout(() => this.connect(), this.backoffMs);
    this.backoffMs = Math.min(this.backoffMs * 2, BACKOFF_MAX_MS);
  }
}

export function streamUrl(monitorUrl: string, sessionId: string): string {
  const ws = monitorUrl.replace(/^http/, "ws");
  return `${ws}/sessions/${sessionId}/stream`;
}
