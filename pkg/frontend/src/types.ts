// Wire payloads of the chatbot and monitor services.  The UI renders these
// verbatim; it never derives verdicts or floor contents on its own.

export interface FloorObject {
  id: string;
  type: string;
  x: number;
  y: number;
}

export interface Floor {
  width: number;
  height: number;
  objects: FloorObject[];
}

export type VerdictValue = "true" | "false" | "inconclusive" | "unavailable";

export interface MessageVerdict {
  property: string;
  stage: "intent" | "action";
  verdict: VerdictValue;
  currently_accepting: boolean;
  explanation: string;
}

export interface MessageResponse {
  reply: string;
  intent: string;
  confidence: number;
  verdicts: MessageVerdict[];
  message_verdict: string;
  blocked: boolean;
  floor: Floor;
}

export interface ConversationInfo {
  conversation_id: string;
  monitor_level: string;
  monitor_url: string;
  monitor_sessions: Record<string, string>;
  floor: Floor;
}

export interface VerdictPayload {
  verdict: VerdictValue;
  currently_accepting: boolean;
  explanation: string;
}

export interface StreamEntry {
  type: "entry";
  index: number;
  event: Record<string, unknown>;
  verdict: VerdictPayload;
}

export interface StreamReset {
  type: "reset";
  generation: number;
}

export interface StreamError {
  type: "error";
  error: string;
}

export type StreamMessage = StreamEntry | StreamReset | StreamError;
