/**
 * Client-side session state, derived purely from server events.
 *
 * The UI holds no authoritative state of its own: applying the same event
 * log to a fresh view model reproduces the identical view, so a page
 * reload plus replay loses nothing. User gestures never touch this state
 * directly; they only produce client messages, and the server's answering
 * events flow back through applyServerEvent.
 */

import {
  EngineConfigDoc,
  LayoutDoc,
  Segment,
  ServerEvent,
} from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface HelpState {
  keyId: string;
  summary: string;
  example: string;
  exampleSegments: Segment[];
}

export interface ViewModel {
  layout: LayoutDoc;
  config: EngineConfigDoc;
  connection: ConnectionStatus;
  /** Scan focus as sibling indices from the group level down; [] = inactive. */
  focusPath: number[];
  focusLevel: string;
  buffer: string;
  segments: Segment[];
  printed: string[];
  captions: string[];
  zoomKey: string | null;
  help: HelpState | null;
  lastError: { code: string; message: string } | null;
  lastSeq: number;
  seqGap: boolean;
}

export function createViewModel(
  layout: LayoutDoc,
  config: EngineConfigDoc,
): ViewModel {
  return {
    layout,
    config,
    connection: "connecting",
    focusPath: [],
    focusLevel: "inactive",
    buffer: "",
    segments: [],
    printed: [],
    captions: [],
    zoomKey: null,
    help: null,
    lastError: null,
    lastSeq: 0,
    seqGap: false,
  };
}

/**
 * Fold one server event into the view. Returns true when the event was
 * applied, false when it was stale or unrecognized and left state alone
 * (apart from sequence bookkeeping).
 */
export function applyServerEvent(view: ViewModel, event: ServerEvent): boolean {
  if (event.seq <= view.lastSeq) {
    // out of order on an ordered stream: never let stale state win
    view.seqGap = true;
    return false;
  }
  if (view.lastSeq > 0 && event.seq !== view.lastSeq + 1) {
    view.seqGap = true;
  }
  view.lastSeq = event.seq;

  switch (event.type) {
    case "focus":
      view.focusPath = event.path ?? [];
      view.focusLevel = event.level ?? "inactive";
      return true;
    case "key_selected":
      return true;
    case "buffer_changed":
      view.buffer = event.text ?? "";
      return true;
    case "zoom":
      view.zoomKey = event.key_id ?? null;
      return true;
    case "speak":
      view.captions.push(event.text ?? "");
      return true;
    case "help":
      view.help = {
        keyId: event.key_id ?? "",
        summary: event.summary ?? "",
        example: event.example ?? "",
        exampleSegments: event.example_segments ?? [],
      };
      return true;
    case "printed":
      view.printed.push(event.line ?? "");
      return true;
    case "turtle_segments":
      view.segments.push(...(event.segments ?? []));
      return true;
    case "turtle_reset":
      view.segments = [];
      return true;
    case "config_echo":
      if (event.config) {
        view.config = event.config;
      }
      return true;
    case "error":
      view.lastError = {
        code: event.code ?? "unknown",
        message: event.message ?? "",
      };
      return true;
    default:
      console.info(`ignoring unknown server event type "${event.type}"`);
      return false;
  }
}
