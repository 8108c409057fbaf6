// UI state and its pure update functions.  Everything shown comes from
// service payloads; the reducers only arrange them for rendering.

import type {
  ConversationInfo,
  Floor,
  MessageResponse,
  MessageVerdict,
  StreamEntry,
} from "./types.js";

export interface ChatTurn {
  role: "user" | "bot";
  text: string;
  verdicts: MessageVerdict[];
  messageVerdict: string;
  blocked: boolean;
}

export interface TimelineItem {
  property: string;
  generation: number;
  index: number;
  kind: string; // "user_intent" | "bot_action" | "gap"
  detail: string;
  verdict: string;
  explanation: string;
}

export interface UiState {
  conversationId: string;
  monitorLevel: string;
  monitorUrl: string;
  sessions: Record<string, string>; // property -> session id
  turns: ChatTurn[];
  floor: Floor | null;
  timeline: TimelineItem[];
  generations: Record<string, number>; // property -> current stream generation
  banner: string;
}

export function emptyState(): UiState {
  return {
    conversationId: "",
    monitorLevel: "",
    monitorUrl: "",
    sessions: {},
    turns: [],
    floor: null,
    timeline: [],
    generations: {},
    banner: "",
  };
}

export function applyConversation(state: UiState, info: ConversationInfo): UiState {
  return {
    ...emptyState(),
    conversationId: info.conversation_id,
    monitorLevel: info.monitor_level,
    monitorUrl: info.monitor_url,
    sessions: info.monitor_sessions,
    floor: info.floor,
    banner: state.banner,
  };
}

export function applyUserMessage(state: UiState, text: string): UiState {
  const turn: ChatTurn = {
    role: "user",
    text,
    verdicts: [],
    messageVerdict: "",
    blocked: false,
  };
  return { ...state, turns: [...state.turns, turn], banner: "" };
}

export function applyMessageResponse(state: UiState, response: MessageResponse): UiState {
  const turn: ChatTurn = {
    role: "bot",
    text: response.reply,
    verdicts: response.verdicts,
    messageVerdict: response.message_verdict,
    blocked: response.blocked,
  };
  return { ...state, turns: [...state.turns, turn], floor: response.floor };
}

export function applyFloor(state: UiState, floor: Floor): UiState {
  return { ...state, floor };
}

export function applyNetworkFailure(state: UiState, message: string): UiState {
  return { ...state, banner: message };
}

/** The explanation of the first false verdict of a bot turn, if any. */
export function falseExplanation(turn: ChatTurn): string {
  const failing = turn.verdicts.find((v) => v.verdict === "false");
  return failing ? failing.explanation : "";
}

export function eventSummary(event: Record<string, unknown>): { kind: string; detail: string } {
  const kind = typeof event["kind"] === "string" ? (event["kind"] as string) : "event";
  if (kind === "user_intent") {
    const intent = event["intent"] as { name?: string } | undefined;
    return { kind, detail: intent?.name ?? "?" };
  }
  if (kind === "bot_action") {
    const action = event["last_action"];
    return { kind, detail: typeof action === "string" ? action : "?" };
  }
  return { kind, detail: "" };
}

export function applyStreamReset(state: UiState, property: string, generation: number): UiState {
  const generations = { ...state.generations, [property]: generation };
  // A new generation means the session was reset: its old entries are stale.
  const timeline = state.timeline.filter(
    (item) => item.property !== property || item.kind === "gap",
  );
  return generation === (state.generations[property] ?? -1)
    ? state
    : { ...state, generations, timeline };
}

/** Appends one streamed (event, verdict) pair.  Replayed history after a
 * reconnect arrives with the same (generation, index) and is dropped. */
export function applyStreamEntry(state: UiState, property: string, entry: StreamEntry): UiState {
  const generation = state.generations[property] ?? 0;
  const duplicate = state.timeline.some(
    (item) =>
      item.property === property &&
      item.generation === generation &&
      item.index === entry.index &&
      item.kind !== "gap",
  );
  if (duplicate) return state;
  const { kind, detail } = eventSummary(entry.event);
  const item: TimelineItem = {
    property,
    generation,
    index: entry.index,
    kind,
    detail,
    verdict: entry.verdict.verdict,
    explanation: entry.verdict.explanation,
  };
  return { ...state, timeline: [...state.timeline, item] };
}

/** Marks a stream interruption so the operator knows entries may be missing
 * until the replay catches up. */
export function applyStreamGap(state: UiState, property: string): UiState {
  const last = state.timeline[state.timeline.length - 1];
  if (last && last.property === property && last.kind === "gap") return state;
  const item: TimelineItem = {
    property,
    generation: state.generations[property] ?? 0,
    index: -1,
    kind: "gap",
    detail: "connection lost, reconnecting",
    verdict: "",
    explanation: "",
  };
  return { ...state, timeline: [...state.timeline, item] };
}
