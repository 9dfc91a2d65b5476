/**
 * Wires the pieces together against any message transport with a send()
 * method, so the whole UI runs identically under a live WebSocket or a
 * scripted stub in tests. All state changes flow server -> view model ->
 * DOM; gestures only produce client messages.
 */

import { createKeyboardView, KeyboardViewOptions } from "./keyboardView.js";
import { ClientEvent, EngineConfigDoc, LayoutDoc, parseServerEvent } from "./protocol.js";
import { Context2dLike, createTurtleCanvas, TurtleCanvas } from "./turtleCanvas.js";
import {
  applyServerEvent,
  ConnectionStatus,
  createViewModel,
  ViewModel,
} from "./viewModel.js";

export interface Wire {
  send(event: ClientEvent): boolean;
}

export interface AppOptions {
  getContext?: (canvas: HTMLCanvasElement) => Context2dLike | null;
  playTone?: () => void;
  helpStepMs?: number;
  zoomHideMs?: number;
}

export interface App {
  view: ViewModel;
  handleLine(line: string): void;
  setConnection(status: ConnectionStatus): void;
  gesture(event: ClientEvent): void;
  dispose(): void;
}

const TURTLE_SIZE = 500;

export function createApp(
  root: HTMLElement,
  layout: LayoutDoc,
  config: EngineConfigDoc,
  wire: Wire,
  options: AppOptions = {},
): App {
  const doc = root.ownerDocument;
  const view = createViewModel(layout, config);

  const getContext =
    options.getContext ??
    ((canvas: HTMLCanvasElement) =>
      canvas.getContext("2d") as Context2dLike | null);

  const keyboardOptions: KeyboardViewOptions = {
    onGesture: (event) => gesture(event),
    getContext,
    playTone: options.playTone,
    helpStepMs: options.helpStepMs,
    zoomHideMs: options.zoomHideMs,
  };
  const keyboard = createKeyboardView(root, layout, keyboardOptions);

  const canvasEl = doc.createElement("canvas");
  canvasEl.className = "turtle-canvas";
  canvasEl.width = TURTLE_SIZE;
  canvasEl.height = TURTLE_SIZE;
  root.appendChild(canvasEl);
  const turtleCtx = getContext(canvasEl);
  const turtle: TurtleCanvas | null = turtleCtx
    ? createTurtleCanvas(turtleCtx, TURTLE_SIZE, TURTLE_SIZE)
    : null;

  function gesture(event: ClientEvent): void {
    if (!wire.send(event)) {
      keyboard.flashNotice("not connected: input dropped");
    }
  }

  const onKeyDown = (event: KeyboardEvent) => {
    if (event.key === " " || event.code === "Space") {
      event.preventDefault();
      gesture({ type: "switch_press" });
    }
  };
  doc.addEventListener("keydown", onKeyDown);

  keyboard.sync(view);

  return {
    view,
    handleLine(line: string) {
      const event = parseServerEvent(line);
      if (event === null) {
        console.info("ignoring undecodable server line");
        return;
      }
      applyServerEvent(view, event);
      keyboard.handleEvent(view, event);
      keyboard.sync(view);
      turtle?.sync(view.segments);
    },
    setConnection(status: ConnectionStatus) {
      view.connection = status;
      keyboard.sync(view);
    },
    gesture,
    dispose() {
      doc.removeEventListener("keydown", onKeyDown);
      keyboard.dispose();
    },
  };
}
