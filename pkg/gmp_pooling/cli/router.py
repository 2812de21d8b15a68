import logging
from argparse import Namespace

logger = logging.getLogger(__name__)


class CommandRouter:
    """Routes a parsed command line to the handler registered for its verb."""

    def __init__(self):
        self.routes = {}  # verb -> handler(args) -> exit status

    def add_route(self, verb, handler):
        # one handler per verb; later registrations replace earlier ones
        if verb in self.routes:
            logger.debug("router: replacing handler for %s", verb)
        self.routes[verb] = handler

    def add_command_route(self, verb):
        """Decorator form of add_route."""
        def decorator_route_command(func):
            self.add_route(verb, func)
            return func
        return decorator_route_command

    def route(self, args: Namespace) -> int:
        verb = getattr(args, "verb", None)
        logger.debug("router: dispatching %s", verb)
        handler = self.routes.get(verb)
        if handler is None:
            return self.unknown_handler(args)
        return handler(args)

    def unknown_handler(self, args: Namespace) -> int:
        logger.error("router: unknown command %r", getattr(args, "verb", None))
        return 2
