import logging

from fastapi import APIRouter, HTTPException, Query
from fastapi.responses import JSONResponse

from mosaics.errors import MosaicError
from mosaics.fillsearch import MAX_SEARCH_CELLS, MIN_SEARCH_CELLS, FillRules, reproduce_classification, shape_filters
from mosaics.fixtures import load_masks, load_patterns
from mosaics.polyomino import GROWTH_MODES, MAX_GROWTH_CELLS, compliant, grow_enumerate

logger = logging.getLogger("routes_search")

router = APIRouter(prefix="/search", tags=["Search"])


@router.get("/enumerate", response_class=JSONResponse)
def enumerate_shapes(
    cells: int = Query(..., ge=3, le=MAX_GROWTH_CELLS, description="Number of cells per shape"),
    compliant_only: bool = Query(False, alias="compliant", description="Keep only shapes passing the occupancy masks"),
    mode: str = Query("l_triomino", description=f"One of: {', '.join(GROWTH_MODES)}"),
    rules: str = Query("strict", description="Rule preset used by the compliance filter: strict or mandatory"),
):
    if mode not in GROWTH_MODES:
        raise HTTPException(status_code=400, detail=f"unknown growth mode {mode!r}")
    try:
        shapes = grow_enumerate(cells, mode)
        if compliant_only:
            filters = shape_filters(FillRules.preset(rules), load_masks(), load_patterns())
            shapes = [shape for shape in shapes if compliant(shape, filters)]
    except MosaicError as e:
        raise HTTPException(status_code=400, detail=str(e))
    logger.info(f"Enumerated {len(shapes)} shapes with {cells} cells (mode={mode}, compliant={compliant_only})")
    return {
        "cells": cells,
        "mode": mode,
        "compliant": compliant_only,
        "count": len(shapes),
        "shapes": [shape.to_text() for shape in shapes],
    }


@router.get("/classification", response_class=JSONResponse)
def classification(
    max_cells: int = Query(..., ge=MIN_SEARCH_CELLS, le=MAX_SEARCH_CELLS, description="Largest shape size searched"),
    rules: str = Query("strict", description="Rule preset: strict or mandatory"),
):
    try:
        report = reproduce_classification(max_cells, rules=rules)
    except MosaicError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return report.to_dict()
