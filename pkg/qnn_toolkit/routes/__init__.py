"""
Compile route definitions and route planning.
"""

from collections import deque
from typing import Dict, Any, Iterable, List, Optional

from ..errors import CompileError
from .circuit_routes import get_circuit_routes
from .qnn_routes import get_qnn_routes


def get_all_routes() -> Dict[str, Any]:
    routes = dict(get_circuit_routes())
    routes.update(get_qnn_routes())
    return routes


def plan_route(source: str, target: str, enabled: Optional[Iterable[str]] = None) -> List[str]:
    """
    Shortest chain of route names from ``source`` to ``target``, using only
    ``enabled`` routes when given. An empty list means nothing to do.
    """
    routes = get_all_routes()
    allowed = set(routes if enabled is None else enabled)
    queue = deque([(source, [])])
    seen = {source}
    while queue:
        kind, chain = queue.popleft()
        if kind == target:
            return chain
        for name in sorted(allowed):
            route = routes.get(name)
            if route is None or route["from"] != kind or route["to"] in seen:
                continue
            seen.add(route["to"])
            queue.append((route["to"], chain + [name]))
    raise CompileError(f"no enabled route from {source} to {target}")


__all__ = ["get_circuit_routes", "get_qnn_routes", "get_all_routes", "plan_route"]
