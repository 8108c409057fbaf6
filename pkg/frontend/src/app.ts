// Wires the pieces together: one conversation, its floor grid, and one
// verdict stream per active property session.

import { ApiError, ChatbotClient, VerdictStream, streamUrl, WebSocketFactory } from "./api.js";
import { renderTurns } from "./chat.js";
import { renderGrid } from "./grid.js";
import {
  applyConversation,
  applyFloor,
  applyMessageResponse,
  applyNetworkFailure,
  applyStreamEntry,
  applyStreamGap,
  applyStreamReset,
  applyUserMessage,
  emptyState,
  UiState,
} from "./state.js";
import { renderTimeline } from "./timeline.js";
import type { StreamMessage } from "./types.js";

export interface AppElements {
  turns: HTMLElement;
  grid: HTMLElement;
  timeline: HTMLElement;
  banner: HTMLElement;
  input: HTMLInputElement;
  form: HTMLFormElement;
  levelBadge: HTMLElement;
  levelSelect: HTMLSelectElement;
  levelWarning: HTMLElement;
  newConversation: HTMLElement;
}

export class App {
  state: UiState = emptyState();
  private streams: VerdictStream[] = [];
  private sending = false;

  constructor(
    readonly elements: AppElements,
    readonly client: ChatbotClient = new ChatbotClient(""),
    private readonly socketFactory?: WebSocketFactory,
  ) {}

  async start(): Promise<void> {
    this.elements.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.send();
    });
    this.elements.newConversation.addEventListener("click", () => {
      void this.newConversation();
    });
    this.elements.levelSelect.addEventListener("change", () => this.renderToolbar());
    await this.newConversation();
  }

  async newConversation(): Promise<void> {
    this.stopStreams();
    try {
      const info = await this.client.createConversation();
      this.state = applyConversation(this.state, info);
      this.subscribeVerdicts();
    } catch (err) {
      this.state = applyNetworkFailure(this.state, describe(err));
    }
    this.render();
  }

  /** Sends the input's text; empty input sends nothing.  On network failure
   * the input is preserved so the user can retry. */
  async send(): Promise<void> {
    const text = this.elements.input.value.trim();
    if (!text || this.sending || !this.state.conversationId) return;
    this.sending = true;
    this.state = applyUserMessage(this.state, text);
    this.render();
    try {
      const response = await this.client.sendMessage(this.state.conversationId, text);
      this.state = applyMessageResponse(this.state, response);
      this.elements.input.value = "";
      // the grid is a pure view of the service: re-fetch after every reply
      const floor = await this.client.fetchFloor(this.state.conversationId);
      this.state = applyFloor(this.state, floor);
    } catch (err) {
      this.state = applyNetworkFailure(this.state, describe(err));
      this.state = { ...this.state, turns: this.state.turns.slice(0, -1) };
    } finally {
      this.sending = false;
    }
    this.render();
  }

  subscribeVerdicts(): void {
    if (!this.state.monitorUrl) return;
    for (const [property, sessionId] of Object.entries(this.state.sessions)) {
      const stream = new VerdictStream(
        streamUrl(this.state.monitorUrl, sessionId),
        {
          onMessage: (message) => this.onStreamMessage(property, message),
          onGap: () => {
            this.state = applyStreamGap(this.state, property);
            this.render();
          },
        },
        this.socketFactory,
      );
      this.streams.push(stream);
      stream.start();
    }
  }

  onStreamMessage(property: string, message: StreamMessage): void {
    if (message.type === "reset") {
      this.state = applyStreamReset(this.state, property, message.generation);
    } else if (message.type === "entry") {
      this.state = applyStreamEntry(this.state, property, message);
    }
    this.render();
  }

  stopStreams(): void {
    for (const stream of this.streams) stream.stop();
    this.streams = [];
  }

  render(): void {
    renderTurns(this.elements.turns, this.state.turns);
    renderGrid(this.elements.grid, this.state.floor);
    renderTimeline(this.elements.timeline, this.state.timeline);
    this.elements.banner.textContent = this.state.banner;
    this.elements.banner.className = this.state.banner ? "banner visible" : "banner";
    this.renderToolbar();
  }

  renderToolbar(): void {
    const served = this.state.monitorLevel;
    this.elements.levelBadge.textContent = served ? `monitoring: ${served}` : "";
    const wanted = this.elements.levelSelect.value;
    const mismatch = Boolean(served) && wanted !== served;
    this.elements.levelWarning.textContent = mismatch
      ? `stack is serving '${served}'; restart it with --monitor ${wanted} to switch`
      : "";
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return `unexpected error: ${String(err)}`;
}
