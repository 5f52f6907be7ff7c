"""
periodic-seirs - HTTP Application Entry Point
Read-only access to the periodic SEIRS analysis library
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import uvicorn

from api.routes import api_router
from config import get_settings
from seirs import __version__

settings = get_settings()

app = FastAPI(
    title="periodic-seirs",
    description="Reproduction ratio, threshold analysis and incidence audits for periodic SEIRS models",
    version=__version__,
)

# Origins come from SEIRS_BACKEND_CORS_ORIGINS (JSON list or comma separated)
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.BACKEND_CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

app.include_router(api_router, prefix="/api", tags=["API"])


@app.get("/")
async def root():
    """Health check endpoint"""
    return {"message": "periodic-seirs is running", "version": __version__}


@app.get("/health")
async def health_check():
    """Health check for monitoring"""
    return {"status": "healthy"}


if __name__ == "__main__":
    uvicorn.run(
        "main:app",
        host="0.0.0.0",
        port=8000,
    )
