/**
 * Types for the line-delimited JSON protocol spoken by the session server.
 *
 * Server events arrive one JSON object per line with a gapless `seq`
 * counter; client events are single JSON objects sent back on the same
 * socket. Field names here mirror the wire exactly.
 */

/** One drawn stroke: [x1, y1, x2, y2] in turtle coordinates (y up). */
export type Segment = [number, number, number, number];

export interface KeyHelpDoc {
  summary: string;
  example: string;
}

export interface KeyDoc {
  id: string;
  label: string;
  output: string;
  kind: string;
  help?: KeyHelpDoc | null;
}

export interface SubgroupDoc {
  id: string;
  label: string;
  rows: KeyDoc[][];
}

export interface GroupDoc {
  id: string;
  label: string;
  subgroups: SubgroupDoc[];
}

export interface LayoutDoc {
  name: string;
  groups: GroupDoc[];
}

export interface ScanConfigDoc {
  period_ms: number;
  repeat_cycles: number;
  sound_on: boolean;
  highlight_color: [number, number, number];
  post_select: string;
}

export interface EngineConfigDoc {
  scan: ScanConfigDoc;
  transparency: number;
  zoom_enabled: boolean;
  voice_enabled: boolean;
  keyboard_scale: number;
  layout_path: string;
}

/**
 * A decoded server event. `seq` and `type` are always present; the rest
 * depends on the type, so fields are optional and the reducer narrows them.
 */
export interface ServerEvent {
  seq: number;
  type: string;
  path?: number[];
  level?: string;
  key_id?: string;
  output?: string;
  text?: string;
  line?: string;
  segments?: Segment[];
  summary?: string;
  example?: string;
  example_segments?: Segment[];
  config?: EngineConfigDoc;
  code?: string;
  message?: string;
}

export type ClientEvent =
  | { type: "switch_press" }
  | { type: "clock_tick" }
  | { type: "pointer_hover"; key_id: string }
  | { type: "pointer_select"; key_id: string }
  | { type: "run_buffer" }
  | { type: "clear_buffer" }
  | { type: "load_program"; text: string }
  | { type: "config_update"; config: Record<string, unknown> };

/** Parse one line from the server; null if it is not a valid event. */
export function parseServerEvent(rawLine: string): ServerEvent | null {
  let parsed: unknown;
  try {
    parsed = JSON.parse(rawLine);
  } catch {
    return null;
  }
  if (typeof parsed !== "object" || parsed === null) {
    return null;
  }
  const event = parsed as ServerEvent;
  if (typeof event.seq !== "number" || typeof event.type !== "string") {
    return null;
  }
  return event;
}

export function encodeClientEvent(event: ClientEvent): string {
  return JSON.stringify(event);
}
