from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from mosaics.config import get_settings
from mosaics.errors import MosaicError
from routes_mosaics import router as mosaics_router
from routes_search import router as search_router
import logging

logging.basicConfig(level=get_settings().log_level)
logger = logging.getLogger(__name__)

app = FastAPI(title="Corner Mosaics API")


@app.exception_handler(MosaicError)
async def mosaic_exception_handler(request: Request, exc: MosaicError):
    logger.warning(f"Unhandled mosaic error on {request.url.path}: {exc}")
    return JSONResponse(status_code=400, content={"detail": str(exc), "error_type": type(exc).__name__})


# Anything else is a bug; log it and answer with a bare 500
@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    logger.error(f"Unhandled exception on {request.url.path}: {exc}")
    return JSONResponse(
        status_code=500,
        content={"detail": "Internal server error", "error_type": "general_error"}
    )

# Allow all origins, methods, and headers for CORS (adjust as needed for production)
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(mosaics_router)
app.include_router(search_router)

@app.get("/")
def read_root():
    return {"message": "Welcome to the Corner Mosaics API server!"}
