"""WebSocket and HTTP transport around the session engine.

One WebSocket connection owns one Session.  Client lines and the
server-side scan clock are funnelled through a single queue, so handle()
calls never interleave and the event log stays replayable.
"""

from __future__ import annotations

import asyncio
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .engine import EngineConfig, Session, config_to_dict, load_layout_source
from .layout import render

CLOCK_LINE = '{"type":"clock_tick"}'


def create_app(config: EngineConfig | None = None, manual_clock: bool = False,
               frontend_dir: str | Path | None = None) -> FastAPI:
    """Build the app.  manual_clock disables the server-side tick timer,
    leaving scan timing to explicit clock_tick client events (tests,
    deterministic demos)."""
    base_config = config or EngineConfig()
    base_config.validate()
    layout_text = render(load_layout_source(base_config.layout_path))
    app = FastAPI(title="scanboard")

    @app.get("/layout")
    async def get_layout() -> Response:
        return Response(content=layout_text, media_type="application/json")

    @app.get("/config")
    async def get_config() -> JSONResponse:
        return JSONResponse(config_to_dict(base_config))

    @app.websocket("/session")
    async def session_ws(websocket: WebSocket) -> None:
        await websocket.accept()
        session = Session(config=base_config)
        queue: asyncio.Queue[str | None] = asyncio.Queue()

        async def pump_client() -> None:
            try:
                while True:
                    await queue.put(await websocket.receive_text())
            except WebSocketDisconnect:
                await queue.put(None)

        async def pump_clock() -> None:
            while True:
                # Re-read each cycle so config updates retime the scan.
                await asyncio.sleep(session.config.scan.period_ms / 1000)
                await queue.put(CLOCK_LINE)

        tasks = [asyncio.create_task(pump_client())]
        if not manual_clock:
            tasks.append(asyncio.create_task(pump_clock()))
        try:
            while True:
                line = await queue.get()
                if line is None:
                    break
                for event in session.handle_line(line):
                    await websocket.send_text(event.to_json())
        except (WebSocketDisconnect, RuntimeError):
            pass
        finally:
            for task in tasks:
                task.cancel()

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True),
                  name="frontend")
    return app


def serve(host: str = "127.0.0.1", port: int = 7313,
          config: EngineConfig | None = None, manual_clock: bool = False,
          frontend_dir: str | Path | None = None) -> None:
    """Run the app under uvicorn (blocks until interrupted)."""
    import uvicorn

    app = create_app(config=config, manual_clock=manual_clock,
                     frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
