"""
Routing
"""

import logging
from dataclasses import dataclass
from typing import Callable, Type

from subset_syzygy.models import CommandConfig, ResponseModel

logger = logging.getLogger(__name__)

Handler = Callable[[CommandConfig], ResponseModel]


@dataclass(frozen=True)
class Route:
    name: str
    handler: Handler
    response_model: Type[ResponseModel]
    summary: str


class CommandRouter:
    """Command handlers of one group, registered with ``@router.command``."""

    def __init__(self):
        self.routes: list[Route] = []

    def command(self, name: str, response_model: Type[ResponseModel]):
        def register(handler: Handler) -> Handler:
            summary = (handler.__doc__ or name).strip().splitlines()[0]
            self.routes.append(Route(name, handler, response_model, summary))
            return handler

        return register


class CommandApp:
    """Every registered command, dispatched by name."""

    def __init__(self, title: str, description: str, version: str):
        self.title = title
        self.description = description
        self.version = version
        self.routes: dict[str, Route] = {}

    def include_router(self, router: CommandRouter):
        for route in router.routes:
            if route.name in self.routes:
                raise ValueError(f"command {route.name} is registered twice")
            self.routes[route.name] = route

    def dispatch(self, config: CommandConfig) -> ResponseModel:
        route = self.routes[config.command]
        logger.info("dispatch command=%s", route.name)
        response = route.handler(config)
        if not isinstance(response, route.response_model):
            raise TypeError(
                f"{route.name} returned {type(response).__name__}, "
                f"expected {route.response_model.__name__}"
            )
        return response
