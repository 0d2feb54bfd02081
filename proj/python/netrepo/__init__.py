"""Graph statistics, generators, sampling and a file-system dataset catalog.

The heavy lifting happens in the compiled ``_core`` module; this package turns
its JSON payloads into plain Python dicts and lists.
"""

import json

from . import _core
from ._core import Graph, InvalidConfig, ParseError, QueryError, ServiceError

__all__ = [
    "Graph",
    "InvalidConfig",
    "ParseError",
    "QueryError",
    "Repository",
    "ServiceError",
    "communities",
    "distribution",
    "generate",
    "layout",
    "parse_edge_list",
    "read_edge_list",
    "roles",
    "sample",
    "stats",
]


def parse_edge_list(text):
    """Parse edge-list text. Returns (graph, labels, normalization report)."""
    graph, labels, report = _core.parse_edge_list(text)
    return graph, labels, json.loads(report)


def read_edge_list(path):
    with open(path, encoding="utf-8") as f:
        return parse_edge_list(f.read())


def stats(graph, workers=0):
    """Graph-level and per-node statistics as {"graph": {...}, "nodes": {...}}."""
    return json.loads(_core.stats_json(graph, workers))


def distribution(graph, stat, workers=0):
    return json.loads(_core.distribution_json(graph, stat, workers))


def generate(config):
    """Build a graph from a generator config (dict or JSON string)."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return _core.generate(config)


def communities(graph, seed=0):
    return json.loads(_core.communities_json(graph, seed))


def roles(graph, k=None, seed=0):
    return json.loads(_core.roles_json(graph, k, seed))


def sample(graph, method, fraction, seed=0):
    """Returns (sample graph, original ids of the sample's nodes)."""
    return _core.sample(graph, method, fraction, seed)


def layout(graph, seed=0, iterations=200):
    return _core.layout(graph, seed, iterations)


class Repository:
    """Dataset catalog rooted at a directory, optionally served over HTTP."""

    def __init__(self, root, workers=0):
        self._repo = _core.Repository(str(root), workers)
        self.port = None

    def ingest(self, name, payload, collection="", description="", citation=""):
        return json.loads(self._repo.ingest(name, payload, collection, description, citation))

    def generate(self, config, name="", collection=""):
        if not isinstance(config, str):
            config = json.dumps(config)
        return json.loads(self._repo.generate(config, name, collection))

    def list(self):
        return json.loads(self._repo.list())

    def get(self, id_or_alias):
        return json.loads(self._repo.get(id_or_alias))

    def download(self, id_or_alias):
        return self._repo.download(id_or_alias)

    def load_graph(self, id_or_alias):
        return self._repo.load_graph(id_or_alias)

    def query(self, query):
        if not isinstance(query, str):
            query = json.dumps(query)
        return json.loads(self._repo.query(query))

    def serve(self, host="127.0.0.1", port=0):
        """Start the HTTP service on a background thread; returns the port."""
        self.port = self._repo.serve(host, port)
        return self.port

    def stop(self):
        self._repo.stop()
        self.port = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.stop()
