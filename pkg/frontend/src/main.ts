/** Browser entry point: fetch layout and config, then connect. */

import { App, createApp } from "./app.js";
import { EngineConnection } from "./connection.js";
import { EngineConfigDoc, LayoutDoc } from "./protocol.js";

async function boot(): Promise<void> {
  const layout = (await (await fetch("/layout")).json()) as LayoutDoc;
  const config = (await (await fetch("/config")).json()) as EngineConfigDoc;
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app element");
  }

  let app: App;
  const scheme = location.protocol === "https:" ? "wss" : "ws";
  const connection = new EngineConnection(
    `${scheme}://${location.host}/session`,
    {
      onLine: (line) => app.handleLine(line),
      onStatus: (status) => app.setConnection(status),
    },
  );
  app = createApp(root, layout, config, connection);
  connection.connect();
}

boot().catch((err) => {
  console.error("failed to start", err);
  const root = document.getElementById("app");
  if (root) {
    root.textContent = "failed to start: could not reach the session server";
  }
});
