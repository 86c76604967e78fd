import random

import pytest

from mosaics.config import get_settings
from mosaics.fixtures import fixture_path, load_fixture
from mosaics.tiles import Mosaic, MosaicSystem, Port, Strand, Tile, tile_for_strands


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def fixture():
    return load_fixture


@pytest.fixture
def path_of():
    return fixture_path


def build_random_edge_mosaic(rng: random.Random, rows: int, cols: int, blocks: int) -> Mosaic:
    """Valid edge mosaic from the symmetric difference of random 2x2 cell cycles."""
    edges = set()
    for _ in range(blocks):
        r, c = rng.randrange(rows - 1), rng.randrange(cols - 1)
        edges ^= {
            ((r, c), (r, c + 1)),
            ((r + 1, c), (r + 1, c + 1)),
            ((r, c), (r + 1, c)),
            ((r, c + 1), (r + 1, c + 1)),
        }
    sides = {(r, c): set() for r in range(rows) for c in range(cols)}
    for a, b in edges:
        if a[0] == b[0]:
            sides[a].add(Port.E)
            sides[b].add(Port.W)
        else:
            sides[a].add(Port.S)
            sides[b].add(Port.N)
    grid = [[Tile.T0] * cols for _ in range(rows)]
    for (r, c), ports in sorted(sides.items()):
        if len(ports) == 2:
            grid[r][c] = tile_for_strands([Strand(frozenset(ports))], MosaicSystem.EDGE)
        elif len(ports) == 4:
            grid[r][c] = rng.choice([Tile.T7, Tile.T8, Tile.T9, Tile.T10])
    return Mosaic.from_rows(MosaicSystem.EDGE, grid)


@pytest.fixture
def random_edge_mosaic():
    return build_random_edge_mosaic


@pytest.fixture
def edge_corpus():
    rng = random.Random(20240611)
    corpus = [load_fixture("hopf_edge"), load_fixture("unknot_edge_2x2"), load_fixture("ring_edge_3x3")]
    while len(corpus) < 16:
        rows, cols = rng.randint(2, 4), rng.randint(2, 4)
        mosaic = build_random_edge_mosaic(rng, rows, cols, rng.randint(1, 4))
        if mosaic.nonempty_cells():
            corpus.append(mosaic)
    return corpus
