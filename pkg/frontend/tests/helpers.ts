import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import { ClientEvent, EngineConfigDoc, LayoutDoc } from "../src/protocol.js";
import { Context2dLike } from "../src/turtleCanvas.js";

// vitest runs with the package directory as cwd
export function fixture(name: string): string {
  return readFileSync(resolve("tests/fixtures", name), "utf8");
}

export function fixtureLayout(): LayoutDoc {
  return JSON.parse(fixture("layout.json")) as LayoutDoc;
}

export function fixtureConfig(): EngineConfigDoc {
  return JSON.parse(fixture("config.json")) as EngineConfigDoc;
}

/** Server lines captured from a real session that draws the square. */
export function squareSessionLines(): string[] {
  return fixture("square-session.ndjson").trim().split("\n");
}

export interface Stroke {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

/** Stands in for a 2d context and keeps the strokes it was asked to draw. */
export class RecorderContext implements Context2dLike {
  strokeStyle = "";
  lineWidth = 0;
  strokes: Stroke[] = [];
  clears = 0;
  private from: { x: number; y: number } | null = null;
  private to: { x: number; y: number } | null = null;

  beginPath(): void {
    this.from = null;
    this.to = null;
  }

  moveTo(x: number, y: number): void {
    this.from = { x, y };
  }

  lineTo(x: number, y: number): void {
    this.to = { x, y };
  }

  stroke(): void {
    if (this.from && this.to) {
      this.strokes.push({
        x1: this.from.x,
        y1: this.from.y,
        x2: this.to.x,
        y2: this.to.y,
      });
    }
  }

  clearRect(): void {
    this.clears += 1;
    this.strokes = [];
  }
}

/** Scripted transport: records what the UI sends instead of networking. */
export class StubWire {
  sent: ClientEvent[] = [];
  connected = true;

  send(event: ClientEvent): boolean {
    if (!this.connected) {
      return false;
    }
    this.sent.push(event);
    return true;
  }
}

/**
 * Context factory handing each canvas its own recorder, retrievable by the
 * canvas class name ("turtle-canvas", "help-canvas").
 */
export function recorderFactory() {
  const recorders = new Map<string, RecorderContext>();
  return {
    recorders,
    getContext: (canvas: HTMLCanvasElement) => {
      const recorder = new RecorderContext();
      recorders.set(canvas.className, recorder);
      return recorder;
    },
  };
}
