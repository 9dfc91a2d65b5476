/**
 * WebSocket link to the session server: one JSON object per message in
 * both directions. Reconnects with a fixed delay; send() reports whether
 * the message actually left so callers can surface dropped input.
 */

import { ClientEvent, encodeClientEvent } from "./protocol.js";
import { ConnectionStatus } from "./viewModel.js";

export interface Wire {
  send(event: ClientEvent): boolean;
}

export interface ConnectionHandlers {
  onLine: (line: string) => void;
  onStatus: (status: ConnectionStatus) => void;
}

const RECONNECT_DELAY_MS = 2000;

export class EngineConnection implements Wire {
  private ws: WebSocket | null = null;
  private closedByUs = false;

  constructor(
    private url: string,
    private handlers: ConnectionHandlers,
  ) {}

  connect(): void {
    this.handlers.onStatus("connecting");
    const ws = new WebSocket(this.url);
    this.ws = ws;

    ws.onopen = () => this.handlers.onStatus("open");
    ws.onmessage = (event) => this.handlers.onLine(String(event.data));
    ws.onerror = () => ws.close();
    ws.onclose = () => {
      this.ws = null;
      this.handlers.onStatus("closed");
      if (!this.closedByUs) {
        setTimeout(() => this.connect(), RECONNECT_DELAY_MS);
      }
    };
  }

  send(event: ClientEvent): boolean {
    if (this.ws === null || this.ws.readyState !== WebSocket.OPEN) {
      return false;
    }
    this.ws.send(encodeClientEvent(event));
    return true;
  }

  close(): void {
    this.closedByUs = true;
    this.ws?.close();
  }
}
