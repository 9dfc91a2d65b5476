import { afterEach, describe, expect, it, vi } from "vitest";

import { App, createApp } from "../src/app.js";
import { ServerEvent } from "../src/protocol.js";
import {
  fixtureConfig,
  fixtureLayout,
  RecorderContext,
  recorderFactory,
  StubWire,
} from "./helpers.js";

interface Harness {
  root: HTMLElement;
  wire: StubWire;
  app: App;
  recorders: Map<string, RecorderContext>;
  tones: { count: number };
}

const open: Harness[] = [];

function makeApp(): Harness {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const wire = new StubWire();
  const { recorders, getContext } = recorderFactory();
  const tones = { count: 0 };
  const app = createApp(root, fixtureLayout(), fixtureConfig(), wire, {
    getContext,
    playTone: () => {
      tones.count += 1;
    },
  });
  app.setConnection("open");
  const harness = { root, wire, app, recorders, tones };
  open.push(harness);
  return harness;
}

function feed(app: App, events: Partial<ServerEvent>[]): void {
  let seq = app.view.lastSeq;
  for (const event of events) {
    seq += 1;
    app.handleLine(JSON.stringify({ seq, ...event }));
  }
}

afterEach(() => {
  vi.useRealTimers();
  while (open.length > 0) {
    const harness = open.pop()!;
    harness.app.dispose();
    harness.root.remove();
  }
});

describe("keyboard structure", () => {
  it("renders every group, subgroup, row, and key as nested panels", () => {
    const { root } = makeApp();
    const layout = fixtureLayout();
    expect(root.querySelectorAll(".group")).toHaveLength(layout.groups.length);
    const keyCount = layout.groups
      .flatMap((g) => g.subgroups)
      .flatMap((s) => s.rows)
      .reduce((n, row) => n + row.length, 0);
    expect(root.querySelectorAll(".key")).toHaveLength(keyCount);
    const labels = Array.from(root.querySelectorAll(".group-label")).map(
      (node) => node.textContent,
    );
    expect(labels).toEqual(layout.groups.map((g) => g.label));
  });
});

describe("focus highlight", () => {
  it("outlines the focused group in the configured highlight color", () => {
    const { root, app } = makeApp();
    feed(app, [{ type: "focus", path: [0], level: "group" }]);
    const panel = root.querySelectorAll<HTMLElement>(".group")[0];
    expect(panel.classList.contains("focused")).toBe(true);
    expect(panel.style.outlineColor).toBe("rgb(255, 170, 0)");
  });

  it("never shows a stale highlight once focus moves", () => {
    const { root, app } = makeApp();
    feed(app, [
      { type: "focus", path: [0], level: "group" },
      { type: "focus", path: [0, 1], level: "subgroup" },
    ]);
    expect(root.querySelectorAll(".focused")).toHaveLength(1);
    const focused = root.querySelector<HTMLElement>(".focused")!;
    expect(focused.classList.contains("subgroup")).toBe(true);
  });

  it("clears the highlight when scanning deactivates", () => {
    const { root, app } = makeApp();
    feed(app, [
      { type: "focus", path: [0], level: "group" },
      { type: "focus", path: [], level: "inactive" },
    ]);
    expect(root.querySelectorAll(".focused")).toHaveLength(0);
  });

  it("clicks on focus advance when the scan sound is on", () => {
    const { app, tones } = makeApp();
    feed(app, [
      { type: "focus", path: [0], level: "group" },
      { type: "focus", path: [1], level: "group" },
    ]);
    expect(tones.count).toBe(2);
  });
});

describe("input bridge", () => {
  it("maps a key click to exactly one pointer_select", () => {
    const { root, wire, app } = makeApp();
    const bufferBefore = app.view.buffer;
    root.querySelector<HTMLElement>('[data-key-id="fd"]')!.click();
    expect(wire.sent).toEqual([{ type: "pointer_select", key_id: "fd" }]);
    // the gesture itself must not touch the view; only server events do
    expect(app.view.buffer).toBe(bufferBefore);
  });

  it("maps pointer enter to pointer_hover", () => {
    const { root, wire } = makeApp();
    root
      .querySelector<HTMLElement>('[data-key-id="repeat"]')!
      .dispatchEvent(new MouseEvent("mouseenter"));
    expect(wire.sent).toEqual([{ type: "pointer_hover", key_id: "repeat" }]);
  });

  it("maps Space to switch_press", () => {
    const { wire } = makeApp();
    document.dispatchEvent(
      new KeyboardEvent("keydown", { key: " ", cancelable: true }),
    );
    expect(wire.sent).toEqual([{ type: "switch_press" }]);
  });

  it("ignores other keys", () => {
    const { wire } = makeApp();
    document.dispatchEvent(
      new KeyboardEvent("keydown", { key: "a", cancelable: true }),
    );
    expect(wire.sent).toEqual([]);
  });

  it("maps the Run and Clear buttons to run_buffer and clear_buffer", () => {
    const { root, wire } = makeApp();
    root.querySelector<HTMLElement>("button.run")!.click();
    root.querySelector<HTMLElement>("button.clear")!.click();
    expect(wire.sent.map((e) => e.type)).toEqual(["run_buffer", "clear_buffer"]);
  });

  it("submits the settings form as one config_update", () => {
    const { root, wire } = makeApp();
    const form = root.querySelector<HTMLFormElement>("form.settings")!;
    form.querySelector<HTMLInputElement>('[name="period_ms"]')!.value = "450";
    form.querySelector<HTMLInputElement>('[name="transparency"]')!.value = "0.2";
    form.querySelector<HTMLInputElement>('[name="keyboard_scale"]')!.value = "1.5";
    form.querySelector<HTMLInputElement>('[name="sound_on"]')!.checked = true;
    form.querySelector<HTMLInputElement>('[name="zoom_enabled"]')!.checked = true;
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(wire.sent).toEqual([
      {
        type: "config_update",
        config: {
          scan: { period_ms: 450, sound_on: true },
          transparency: 0.2,
          keyboard_scale: 1.5,
          zoom_enabled: true,
          voice_enabled: false,
        },
      },
    ]);
  });

  it("drops input with a visible notice while disconnected", () => {
    const { root, wire, app } = makeApp();
    app.setConnection("closed");
    wire.connected = false;
    root.querySelector<HTMLElement>('[data-key-id="fd"]')!.click();
    expect(wire.sent).toEqual([]);
    const notice = root.querySelector<HTMLElement>(".notice")!;
    expect(notice.classList.contains("hidden")).toBe(false);
    expect(notice.textContent).toContain("dropped");
  });
});

describe("event-driven panels", () => {
  it("shows the zoom popup and hides it after the timeout", () => {
    vi.useFakeTimers();
    const { root, app } = makeApp();
    feed(app, [{ type: "zoom", key_id: "fd" }]);
    const popup = root.querySelector<HTMLElement>(".zoom-popup")!;
    expect(popup.classList.contains("hidden")).toBe(false);
    expect(popup.textContent).toBe("fd");
    vi.advanceTimersByTime(1600);
    expect(popup.classList.contains("hidden")).toBe(true);
  });

  it("replays the help example one segment per step", () => {
    vi.useFakeTimers();
    const { root, app, recorders } = makeApp();
    feed(app, [
      {
        type: "help",
        key_id: "fd",
        summary: "Move the turtle forward by a distance.",
        example: "fd 30",
        example_segments: [
          [0, 0, 0, 30],
          [0, 30, 30, 30],
        ],
      },
    ]);
    const panel = root.querySelector<HTMLElement>(".help-panel")!;
    expect(panel.classList.contains("hidden")).toBe(false);
    expect(panel.querySelector(".help-summary")!.textContent).toContain("forward");
    const recorder = recorders.get("help-canvas")!;
    expect(recorder.strokes).toHaveLength(0);
    vi.advanceTimersByTime(300);
    expect(recorder.strokes).toHaveLength(1);
    vi.advanceTimersByTime(300);
    expect(recorder.strokes).toHaveLength(2);
    vi.advanceTimersByTime(900);
    expect(recorder.strokes).toHaveLength(2);
  });

  it("shows speak text as a caption when no speech facility exists", () => {
    const { root, app } = makeApp();
    feed(app, [{ type: "speak", text: "forward" }]);
    expect(root.querySelector(".captions")!.textContent).toBe("forward");
  });

  it("surfaces server errors in the status line", () => {
    const { root, app } = makeApp();
    feed(app, [{ type: "error", code: "unknown_key", message: "no key x" }]);
    expect(root.querySelector(".status")!.textContent).toBe(
      "unknown_key: no key x",
    );
  });
});

describe("appearance follows config", () => {
  it("applies opacity and scale from a config echo", () => {
    const { root, app } = makeApp();
    const config = fixtureConfig();
    config.transparency = 0.25;
    config.keyboard_scale = 1.5;
    feed(app, [{ type: "config_echo", config }]);
    expect(root.style.opacity).toBe("0.75");
    const board = root.querySelector<HTMLElement>(".board")!;
    expect(board.style.transform).toBe("scale(1.5)");
  });

  it("shows the reconnect banner while the socket is down", () => {
    const { root, app } = makeApp();
    const banner = root.querySelector<HTMLElement>(".banner")!;
    expect(banner.classList.contains("hidden")).toBe(true);
    app.setConnection("closed");
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toContain("disconnected");
  });

  it("warns when the event stream skips a sequence number", () => {
    const { root, app } = makeApp();
    app.handleLine('{"seq":1,"type":"focus","path":[0],"level":"group"}');
    app.handleLine('{"seq":3,"type":"focus","path":[1],"level":"group"}');
    const banner = root.querySelector<HTMLElement>(".banner")!;
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toContain("gap");
  });
});
