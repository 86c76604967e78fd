import logging
from typing import List, Optional

from fastapi import APIRouter, HTTPException, Query
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel

from mosaics.errors import (
    InvalidMosaicError,
    MosaicError,
    MosaicParseError,
    NotCheckerboardError,
    WrongSystemError,
)
from mosaics.linkid import identify
from mosaics.render import FORMATS, render
from mosaics.tiles import Mosaic, MosaicSystem, nonempty_count, parse_mosaic, serialize_mosaic, validate
from mosaics.transform import convert, find_caps, verify_bound

logger = logging.getLogger("routes_mosaics")

router = APIRouter(prefix="/mosaics", tags=["Mosaics"])


class MosaicText(BaseModel):
    text: str


class CapOut(BaseModel):
    cells: List[List[int]]
    opening: str


class CapsOut(BaseModel):
    count: int
    caps: List[CapOut]


class ConvertOut(BaseModel):
    mosaic: str
    input_nonempty: int
    caps_found: int
    pushed: int
    output_nonempty: int


class IdentifyOut(BaseModel):
    components: int
    crossings: int
    link: str
    fingerprint: str
    diagram: str


def domain_error(exc: MosaicError) -> HTTPException:
    """Map a library failure onto an HTTP error."""
    if isinstance(exc, InvalidMosaicError):
        return HTTPException(status_code=422, detail={"message": str(exc), **exc.report.to_dict()})
    if isinstance(exc, (MosaicParseError, WrongSystemError, NotCheckerboardError)):
        return HTTPException(status_code=400, detail=str(exc))
    logger.error(f"Mosaic operation failed: {exc}")
    return HTTPException(status_code=400, detail=str(exc))


def read_mosaic(body: MosaicText, system: Optional[MosaicSystem] = None) -> Mosaic:
    try:
        mosaic = parse_mosaic(body.text)
    except MosaicParseError as e:
        raise domain_error(e)
    if system is not None and mosaic.system != system:
        raise HTTPException(status_code=400, detail=f"expected a {system.value} mosaic, got {mosaic.system.value}")
    return mosaic


@router.post("/validate", response_class=JSONResponse)
def validate_mosaic(body: MosaicText):
    mosaic = read_mosaic(body)
    report = validate(mosaic)
    return {"system": mosaic.system.value, "nonempty": nonempty_count(mosaic), **report.to_dict()}


@router.post("/caps", response_model=CapsOut)
def list_caps(body: MosaicText):
    mosaic = read_mosaic(body, MosaicSystem.EDGE)
    try:
        caps = find_caps(mosaic)
    except MosaicError as e:
        raise domain_error(e)
    return CapsOut(
        count=len(caps),
        caps=[CapOut(cells=[list(cell) for cell in cap.cells], opening=cap.opening.value) for cap in caps],
    )


@router.post("/convert", response_model=ConvertOut)
def convert_mosaic(body: MosaicText):
    mosaic = read_mosaic(body, MosaicSystem.EDGE)
    try:
        converted, trace = convert(mosaic)
    except MosaicError as e:
        raise domain_error(e)
    return ConvertOut(mosaic=serialize_mosaic(converted), **trace.to_dict())


@router.post("/identify", response_model=IdentifyOut)
def identify_mosaic(body: MosaicText):
    mosaic = read_mosaic(body)
    try:
        diagram, fp, link = identify(mosaic)
    except MosaicError as e:
        raise domain_error(e)
    return IdentifyOut(
        components=diagram.component_count(),
        crossings=len(diagram.crossings),
        link=link.tag,
        fingerprint=str(fp),
        diagram=diagram.to_text(),
    )


@router.post("/render")
def render_mosaic(body: MosaicText, format: str = Query("ascii", description=f"One of: {', '.join(FORMATS)}")):
    if format not in FORMATS:
        raise HTTPException(status_code=400, detail=f"unknown render format {format!r}")
    mosaic = read_mosaic(body)
    try:
        picture = render(mosaic, format)
    except MosaicError as e:
        raise domain_error(e)
    if format == "svg":
        return Response(content=picture, media_type="image/svg+xml")
    return PlainTextResponse(picture)


@router.post("/verify-bound", response_class=JSONResponse)
def verify_corner_bound(
    body: MosaicText,
    claimed_tc: int = Query(..., ge=1, description="Claimed corner tile number of the link"),
):
    mosaic = read_mosaic(body, MosaicSystem.EDGE)
    try:
        check = verify_bound(mosaic, claimed_tc)
    except MosaicError as e:
        raise domain_error(e)
    return check.to_dict()
