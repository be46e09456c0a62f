from typing import Optional
from fastapi import APIRouter, Query, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from pydantic import ValidationError
from ..models.schemas import RunConfig, RunResult
from ..core.runner import EXIT_ERROR, dump, runner_instance
import json
import logging

# Configure logging
logger = logging.getLogger(__name__)

router = APIRouter()

# errors that point at the request rather than at the toolkit
CLIENT_ERRORS = {
    "ParseError", "PreconditionError", "SeparabilityError", "FieldRangeError",
    "FieldConstructionError", "UnsupportedConfigurationError", "NotSquarefreeError",
    "ResourceGuardError", "ValueError", "FileNotFoundError",
}


def _error_response(result: RunResult) -> JSONResponse:
    status = 400 if result.error in CLIENT_ERRORS else 500
    return JSONResponse(
        status_code=status,
        content={"error": result.error, "message": result.message},
    )


@router.post("/run")
async def run_command(config: RunConfig):
    """Run one toolkit command and return its exit code and report"""
    logger.info(f"📨 Received run request: {config.command}")
    result = await runner_instance.process(config)
    if result.exit_code == EXIT_ERROR and result.error:
        logger.error(f"❌ Run failed: {result.message}")
        return _error_response(result)
    logger.info(f"✅ Run finished with exit code {result.exit_code}")
    return {"exit_code": result.exit_code, "report": result.report}


@router.get("/bounds")
async def bounds(
    d_omega: int = Query(..., ge=1),
    deg_d: int = Query(..., ge=3),
    n: Optional[int] = Query(None, ge=1),
):
    """Effective Chebotarev threshold"""
    result = await runner_instance.process(
        RunConfig(command="bounds", d_omega=d_omega, deg_d=deg_d, n=n)
    )
    if result.error:
        return _error_response(result)
    return result.report


@router.websocket("/ws")
async def websocket_endpoint(websocket: WebSocket):
    """WebSocket endpoint: one RunConfig per message, one result per reply"""
    logger.info("🔌 WebSocket connection initiated")
    await websocket.accept()

    try:
        while True:
            data = await websocket.receive_text()
            try:
                config = RunConfig(**json.loads(data))
            except (json.JSONDecodeError, TypeError, ValidationError) as e:
                logger.warning(f"⚠️ Invalid WebSocket message: {e}")
                await websocket.send_text(json.dumps({
                    "error": "Invalid run configuration",
                    "message": str(e),
                }))
                continue

            logger.info(f"📨 WebSocket command received: {config.command}")
            result = await runner_instance.process(config)
            await websocket.send_text(json.dumps(dump(result)))

    except WebSocketDisconnect:
        logger.info("🔌 WebSocket client disconnected")
    except Exception as e:
        logger.error(f"❌ WebSocket error: {e}")
        await websocket.close()
