/**
 * DOM rendering for the keyboard, plus the input bridge.
 *
 * The view is split in two: sync(view) projects the view model onto the
 * DOM and is safe to call any number of times, while handleEvent(view, ev)
 * runs the per-event effects that should fire once per server event (the
 * scan click tone, the zoom popup timer, the help animation).
 *
 * Every user gesture maps to exactly one client message through
 * options.onGesture; nothing in here mutates the view model.
 */

import { ClientEvent, KeyDoc, LayoutDoc, ServerEvent } from "./protocol.js";
import { Context2dLike, createTurtleCanvas, TurtleCanvas } from "./turtleCanvas.js";
import { ViewModel } from "./viewModel.js";

export interface KeyboardViewOptions {
  onGesture: (event: ClientEvent) => void;
  /** Override 2d-context lookup; tests inject a recorder here. */
  getContext?: (canvas: HTMLCanvasElement) => Context2dLike | null;
  /** Override the scan click tone. */
  playTone?: () => void;
  helpStepMs?: number;
  zoomHideMs?: number;
}

export interface KeyboardView {
  sync(view: ViewModel): void;
  handleEvent(view: ViewModel, event: ServerEvent): void;
  flashNotice(text: string): void;
  dispose(): void;
}

const HELP_CANVAS_SIZE = 140;

function rgb(color: [number, number, number]): string {
  return `rgb(${color[0]}, ${color[1]}, ${color[2]})`;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className: string,
  parent: Element,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  node.className = className;
  parent.appendChild(node);
  return node;
}

/** Short click played on each focus advance; silent without WebAudio. */
function defaultTone(): () => void {
  let audio: AudioContext | null = null;
  return () => {
    const Ctor = (globalThis as { AudioContext?: typeof AudioContext }).AudioContext;
    if (!Ctor) {
      return;
    }
    audio = audio ?? new Ctor();
    const osc = audio.createOscillator();
    const gain = audio.createGain();
    osc.frequency.value = 880;
    gain.gain.value = 0.04;
    osc.connect(gain);
    gain.connect(audio.destination);
    osc.start();
    osc.stop(audio.currentTime + 0.03);
  };
}

function speechAvailable(): boolean {
  return typeof (globalThis as { speechSynthesis?: unknown }).speechSynthesis !==
    "undefined";
}

function speak(text: string): void {
  const g = globalThis as {
    speechSynthesis?: SpeechSynthesis;
    SpeechSynthesisUtterance?: typeof SpeechSynthesisUtterance;
  };
  if (g.speechSynthesis && g.SpeechSynthesisUtterance) {
    g.speechSynthesis.speak(new g.SpeechSynthesisUtterance(text));
  }
}

export function createKeyboardView(
  root: HTMLElement,
  layout: LayoutDoc,
  options: KeyboardViewOptions,
): KeyboardView {
  const doc = root.ownerDocument;
  const send = options.onGesture;
  const playTone = options.playTone ?? defaultTone();
  const helpStepMs = options.helpStepMs ?? 300;
  const zoomHideMs = options.zoomHideMs ?? 1500;

  const banner = el(doc, "div", "banner hidden", root);
  const notice = el(doc, "div", "notice hidden", root);
  const board = el(doc, "div", "board", root);

  // focus targets indexed by scan path, level by level
  const groupEls: HTMLElement[] = [];
  const subgroupEls: HTMLElement[][] = [];
  const rowEls: HTMLElement[][][] = [];
  const keyEls: HTMLElement[][][][] = [];
  const keysById = new Map<string, KeyDoc>();

  layout.groups.forEach((group, g) => {
    const groupEl = el(doc, "section", "group", board);
    groupEl.dataset.groupId = group.id;
    el(doc, "h2", "group-label", groupEl).textContent = group.label;
    groupEls.push(groupEl);
    subgroupEls.push([]);
    rowEls.push([]);
    keyEls.push([]);

    group.subgroups.forEach((subgroup, s) => {
      const subEl = el(doc, "div", "subgroup", groupEl);
      subEl.dataset.subgroupId = subgroup.id;
      el(doc, "h3", "subgroup-label", subEl).textContent = subgroup.label;
      subgroupEls[g].push(subEl);
      rowEls[g].push([]);
      keyEls[g].push([]);

      subgroup.rows.forEach((row, r) => {
        const rowEl = el(doc, "div", "row", subEl);
        rowEls[g][s].push(rowEl);
        keyEls[g][s].push([]);

        row.forEach((key) => {
          keysById.set(key.id, key);
          const button = el(doc, "button", "key", rowEl);
          button.type = "button";
          button.dataset.keyId = key.id;
          button.textContent = key.label;
          button.addEventListener("click", () => {
            send({ type: "pointer_select", key_id: key.id });
          });
          button.addEventListener("mouseenter", () => {
            send({ type: "pointer_hover", key_id: key.id });
          });
          keyEls[g][s][r].push(button);
        });
      });
    });
  });

  const side = el(doc, "div", "sidebar", root);
  const buffer = el(doc, "pre", "buffer", side);
  const controls = el(doc, "div", "controls", side);
  const runButton = el(doc, "button", "run", controls);
  runButton.type = "button";
  runButton.textContent = "Run";
  runButton.addEventListener("click", () => send({ type: "run_buffer" }));
  const clearButton = el(doc, "button", "clear", controls);
  clearButton.type = "button";
  clearButton.textContent = "Clear";
  clearButton.addEventListener("click", () => send({ type: "clear_buffer" }));

  const zoomPopup = el(doc, "div", "zoom-popup hidden", side);
  const helpPanel = el(doc, "div", "help-panel hidden", side);
  const helpSummary = el(doc, "p", "help-summary", helpPanel);
  const helpExample = el(doc, "code", "help-example", helpPanel);
  const helpCanvasEl = el(doc, "canvas", "help-canvas", helpPanel);
  helpCanvasEl.width = HELP_CANVAS_SIZE;
  helpCanvasEl.height = HELP_CANVAS_SIZE;
  const captions = el(doc, "div", "captions", side);
  const status = el(doc, "div", "status", side);

  const settings = el(doc, "form", "settings", side);
  settings.innerHTML = [
    '<label>period ms <input name="period_ms" type="number" min="50" step="50"></label>',
    '<label>transparency <input name="transparency" type="number" min="0" max="1" step="0.05"></label>',
    '<label>scale <input name="keyboard_scale" type="number" min="0.5" max="3" step="0.1"></label>',
    '<label>sound <input name="sound_on" type="checkbox"></label>',
    '<label>zoom <input name="zoom_enabled" type="checkbox"></label>',
    '<label>voice <input name="voice_enabled" type="checkbox"></label>',
    '<button type="submit">Apply</button>',
  ].join("\n");
  settings.addEventListener("submit", (event) => {
    event.preventDefault();
    const field = (name: string) =>
      settings.querySelector<HTMLInputElement>(`[name="${name}"]`)!;
    send({
      type: "config_update",
      config: {
        scan: {
          period_ms: Number(field("period_ms").value),
          sound_on: field("sound_on").checked,
        },
        transparency: Number(field("transparency").value),
        keyboard_scale: Number(field("keyboard_scale").value),
        zoom_enabled: field("zoom_enabled").checked,
        voice_enabled: field("voice_enabled").checked,
      },
    });
  });

  const getContext =
    options.getContext ??
    ((canvas: HTMLCanvasElement) =>
      canvas.getContext("2d") as Context2dLike | null);
  const helpCtx = getContext(helpCanvasEl);
  const helpCanvas: TurtleCanvas | null = helpCtx
    ? createTurtleCanvas(helpCtx, HELP_CANVAS_SIZE, HELP_CANVAS_SIZE)
    : null;

  let focusedEl: HTMLElement | null = null;
  let helpTimer: ReturnType<typeof setInterval> | null = null;
  let zoomTimer: ReturnType<typeof setTimeout> | null = null;
  let noticeTimer: ReturnType<typeof setTimeout> | null = null;

  const focusTarget = (view: ViewModel): HTMLElement | null => {
    const p = view.focusPath;
    switch (view.focusLevel) {
      case "group":
        return groupEls[p[0]] ?? null;
      case "subgroup":
        return subgroupEls[p[0]]?.[p[1]] ?? null;
      case "row":
        return rowEls[p[0]]?.[p[1]]?.[p[2]] ?? null;
      case "key":
        return keyEls[p[0]]?.[p[1]]?.[p[2]]?.[p[3]] ?? null;
      default:
        return null;
    }
  };

  const stopHelpAnimation = () => {
    if (helpTimer !== null) {
      clearInterval(helpTimer);
      helpTimer = null;
    }
  };

  const startHelpAnimation = (view: ViewModel) => {
    stopHelpAnimation();
    if (!helpCanvas || !view.help) {
      return;
    }
    const segments = view.help.exampleSegments;
    helpCanvas.clear();
    let step = 0;
    helpTimer = setInterval(() => {
      step += 1;
      helpCanvas.sync(segments.slice(0, step));
      if (step >= segments.length) {
        stopHelpAnimation();
      }
    }, helpStepMs);
  };

  return {
    sync(view: ViewModel) {
      if (view.connection !== "open") {
        banner.textContent = "disconnected from the session server, retrying";
        banner.classList.remove("hidden");
      } else if (view.seqGap) {
        banner.textContent = "warning: gap in the server event stream";
        banner.classList.remove("hidden");
      } else {
        banner.classList.add("hidden");
      }

      if (focusedEl) {
        focusedEl.classList.remove("focused");
        focusedEl.style.outlineColor = "";
      }
      focusedEl = focusTarget(view);
      if (focusedEl) {
        focusedEl.classList.add("focused");
        focusedEl.style.outlineColor = rgb(view.config.scan.highlight_color);
      }

      buffer.textContent = view.buffer;
      root.style.opacity = String(1 - view.config.transparency);
      board.style.transform = `scale(${view.config.keyboard_scale})`;

      if (view.zoomKey !== null) {
        const key = keysById.get(view.zoomKey);
        zoomPopup.textContent = key ? key.label : view.zoomKey;
      }

      if (view.help) {
        helpPanel.classList.remove("hidden");
        helpSummary.textContent = view.help.summary;
        helpExample.textContent = view.help.example;
      } else {
        helpPanel.classList.add("hidden");
      }

      if (!speechAvailable()) {
        captions.textContent = view.captions.slice(-3).join("\n");
      }

      status.textContent = view.lastError
        ? `${view.lastError.code}: ${view.lastError.message}`
        : "";
    },

    handleEvent(view: ViewModel, event: ServerEvent) {
      switch (event.type) {
        case "focus":
          if (view.config.scan.sound_on && view.focusLevel !== "inactive") {
            playTone();
          }
          break;
        case "zoom":
          zoomPopup.classList.remove("hidden");
          if (zoomTimer !== null) {
            clearTimeout(zoomTimer);
          }
          zoomTimer = setTimeout(() => {
            zoomPopup.classList.add("hidden");
          }, zoomHideMs);
          break;
        case "help":
          startHelpAnimation(view);
          break;
        case "speak":
          speak(event.text ?? "");
          break;
        default:
          break;
      }
    },

    flashNotice(text: string) {
      notice.textContent = text;
      notice.classList.remove("hidden");
      if (noticeTimer !== null) {
        clearTimeout(noticeTimer);
      }
      noticeTimer = setTimeout(() => notice.classList.add("hidden"), 2000);
    },

    dispose() {
      stopHelpAnimation();
      if (zoomTimer !== null) {
        clearTimeout(zoomTimer);
      }
      if (noticeTimer !== null) {
        clearTimeout(noticeTimer);
      }
    },
  };
}
