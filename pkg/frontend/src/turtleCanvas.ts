/**
 * Turtle drawing surface. Segments use turtle coordinates: origin at the
 * center, y growing upward; the canvas y axis is flipped accordingly.
 *
 * The drawing context is injected as a structural interface so tests can
 * pass a recorder instead of a real 2d context.
 */

import { Segment } from "./protocol.js";

export interface Context2dLike {
  strokeStyle: string;
  lineWidth: number;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  clearRect(x: number, y: number, width: number, height: number): void;
}

export interface TurtleCanvas {
  /** Draw strokes beyond the ones already on the surface. */
  sync(segments: Segment[]): void;
  clear(): void;
  drawnCount(): number;
}

export function createTurtleCanvas(
  ctx: Context2dLike,
  width: number,
  height: number,
): TurtleCanvas {
  let drawn = 0;

  const toX = (x: number) => width / 2 + x;
  const toY = (y: number) => height / 2 - y;

  const drawSegment = (segment: Segment) => {
    const [x1, y1, x2, y2] = segment;
    ctx.beginPath();
    ctx.moveTo(toX(x1), toY(y1));
    ctx.lineTo(toX(x2), toY(y2));
    ctx.stroke();
  };

  ctx.strokeStyle = "#1a1a1a";
  ctx.lineWidth = 2;

  return {
    sync(segments: Segment[]) {
      if (segments.length < drawn) {
        // the log was reset underneath us: start over
        ctx.clearRect(0, 0, width, height);
        drawn = 0;
      }
      for (let i = drawn; i < segments.length; i++) {
        drawSegment(segments[i]);
      }
      drawn = segments.length;
    },
    clear() {
      ctx.clearRect(0, 0, width, height);
      drawn = 0;
    },
    drawnCount() {
      return drawn;
    },
  };
}
