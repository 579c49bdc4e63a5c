"""IMDb-style dataset ingestion into a three-layer network.

Layers built from movie/people/credit records:

* ``A`` (actors): edge between two actors who acted together in at least
  one movie;
* ``D`` (directors): edge between two directors whose aggregated genre
  sets overlap by at least the threshold (default 0.5, intersection over
  the smaller set; Jaccard optional);
* ``M`` (movies): edge between two movies in the same rating class,
  classes [0,2) [2,4) [4,6) [6,8) [8,10]; unrated movies stay isolated.

Inter-layer links: director-actor (directed that actor in some movie),
director-movie, actor-movie. Node ids are dense integers assigned in a
fixed order (actors, directors, movies; each sorted by external key), so
ingestion is deterministic; the original keys are kept as node labels.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Optional, Set, Tuple

from .errors import EmptyInput, ParseError, ReferentialIntegrity
from .model import MLN, InterLayerEdges, LayerGraph

RATING_CLASS_COUNT = 5


@dataclass(frozen=True)
class Movie:
    title: str
    genres: Tuple[str, ...]
    rating: Optional[float]


@dataclass
class ImdbRecords:
    movies: Dict[str, Movie] = field(default_factory=dict)
    people: Dict[str, str] = field(default_factory=dict)  # id -> name
    acts_in: Set[Tuple[str, str]] = field(default_factory=set)    # (person, movie)
    directs: Set[Tuple[str, str]] = field(default_factory=set)

    def validate(self) -> None:
        for rel, name in ((self.acts_in, "acts_in"), (self.directs, "directs")):
            for person, movie in rel:
                if person not in self.people:
                    raise ReferentialIntegrity(f"{name}: unknown person {person}")
                if movie not in self.movies:
                    raise ReferentialIntegrity(f"{name}: unknown movie {movie}")


def rating_class(rating: float) -> int:
    """Class index 0..4 for the ranges [0,2) [2,4) [4,6) [6,8) [8,10]."""
    if not (0.0 <= rating <= 10.0):
        raise ValueError(f"rating {rating} outside [0,10]")
    return min(int(rating // 2), RATING_CLASS_COUNT - 1)


def genre_overlap(a: FrozenSet[str], b: FrozenSet[str], mode: str = "min") -> float:
    if not a or not b:
        return 0.0
    inter = len(a & b)
    if mode == "jaccard":
        return inter / len(a | b)
    return inter / min(len(a), len(b))


def ingest_imdb(records: ImdbRecords,
                genre_overlap_threshold: float = 0.5,
                overlap_mode: str = "min") -> Tuple[MLN, Dict[str, int]]:
    """Build the three-layer network; returns (mln, external key -> node id).

    Actor and director keys in the id map are prefixed ``A:`` / ``D:`` since
    one person may appear in both roles (as distinct nodes).
    """
    if not records.movies and not records.people:
        raise EmptyInput("no movies or people to ingest")
    records.validate()

    movies_of_actor: Dict[str, Set[str]] = {}
    for person, movie in records.acts_in:
        movies_of_actor.setdefault(person, set()).add(movie)
    movies_of_director: Dict[str, Set[str]] = {}
    for person, movie in records.directs:
        movies_of_director.setdefault(person, set()).add(movie)

    # people with no credited movies are dropped: they can carry no links
    actors = sorted(movies_of_actor)
    directors = sorted(movies_of_director)
    movies = sorted(records.movies)

    ids: Dict[str, int] = {}
    for key in ([f"A:{a}" for a in actors] + [f"D:{d}" for d in directors]
                + [f"M:{m}" for m in movies]):
        ids[key] = len(ids)
    aid = {a: ids[f"A:{a}"] for a in actors}
    did = {d: ids[f"D:{d}"] for d in directors}
    mid = {m: ids[f"M:{m}"] for m in movies}

    # layer A: co-acting
    cast: Dict[str, Set[str]] = {}
    for person, movie in records.acts_in:
        cast.setdefault(movie, set()).add(person)
    a_edges = set()
    for members in cast.values():
        for u, v in combinations(sorted(members), 2):
            a_edges.add((aid[u], aid[v]))
    layer_a = LayerGraph.build("A", aid.values(), a_edges,
                               {aid[a]: records.people[a] for a in actors})

    # layer D: aggregated genre overlap
    genres: Dict[str, FrozenSet[str]] = {
        d: frozenset(g for m in ms for g in records.movies[m].genres)
        for d, ms in movies_of_director.items()}
    d_edges = set()
    for u, v in combinations(directors, 2):
        if genre_overlap(genres[u], genres[v], overlap_mode) >= genre_overlap_threshold:
            d_edges.add((did[u], did[v]))
    layer_d = LayerGraph.build("D", did.values(), d_edges,
                               {did[d]: records.people[d] for d in directors})

    # layer M: shared rating class
    by_class: Dict[int, list] = {}
    for m in movies:
        rating = records.movies[m].rating
        if rating is not None:
            by_class.setdefault(rating_class(rating), []).append(m)
    m_edges = set()
    for group in by_class.values():
        for u, v in combinations(group, 2):
            m_edges.add((mid[u], mid[v]))
    layer_m = LayerGraph.build("M", mid.values(), m_edges,
                               {mid[m]: records.movies[m].title for m in movies})

    l_ad = {(aid[a], did[d])
            for d, ms in movies_of_director.items()
            for m in ms for a in cast.get(m, ())}
    l_dm = {(did[d], mid[m]) for d, m in records.directs}
    l_am = {(aid[a], mid[m]) for a, m in records.acts_in}

    mln = MLN()
    mln.add_layer(layer_a).add_layer(layer_d).add_layer(layer_m)
    mln.add_interlayer(InterLayerEdges.build("A", "D", l_ad))
    mln.add_interlayer(InterLayerEdges.build("D", "M", l_dm))
    mln.add_interlayer(InterLayerEdges.build("A", "M", l_am))
    return mln.freeze(), ids


# ---------------------------------------------------------------------------
# TSV loading (IMDb public-dataset column conventions; extra columns ignored)

_MISSING = ("", r"\N")


def load_imdb_tsvs(movies_path, people_path, acts_path, directs_path) -> ImdbRecords:
    records = ImdbRecords()
    for row, lineno in _tsv_rows(movies_path):
        try:
            key = row["tconst"]
            raw_genres = row.get("genres", "")
            raw_rating = row.get("averageRating", "")
        except KeyError as exc:
            raise ParseError(f"missing column {exc}", lineno) from None
        genres = tuple(g for g in raw_genres.split(",") if g and g not in _MISSING)
        rating = None if raw_rating in _MISSING else float(raw_rating)
        records.movies[key] = Movie(row.get("primaryTitle", key), genres, rating)
    for row, lineno in _tsv_rows(people_path):
        records.people[row["nconst"]] = row.get("primaryName", row["nconst"])
    for row, _ in _tsv_rows(acts_path):
        records.acts_in.add((row["nconst"], row["tconst"]))
    for row, _ in _tsv_rows(directs_path):
        records.directs.add((row["nconst"], row["tconst"]))
    return records


def _tsv_rows(path):
    with Path(path).open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle, delimiter="\t")
        for lineno, row in enumerate(reader, start=2):
            yield row, lineno
