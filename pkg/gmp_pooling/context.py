import threading
from abc import ABC, abstractmethod
from collections import defaultdict
from typing import Any, Callable, Dict, Optional


class ContextStorage(ABC):
    """Namespaced key/value storage for encoder parameters shared by per-image jobs."""

    def __init__(self, namespace_elements: tuple):
        self.namespace = ':'.join(str(element) for element in namespace_elements)

    @abstractmethod
    def get(self, key: str) -> Optional[Any]:
        pass

    @abstractmethod
    def set(self, key: str, value: Any) -> None:
        pass

    @abstractmethod
    def delete(self, key: str) -> None:
        pass

    @abstractmethod
    def get_or_create(self, key: str, factory: Callable[[], Any]) -> Any:
        """Return the stored value, building it with ``factory`` on first use."""


class InMemoryContextStorage(ContextStorage):
    """Process-wide storage; the namespace keeps runs with different encoders or seeds apart.

    Jobs run on executor threads, so building a missing value happens under a
    lock and every job of a run sees the same codebook or EMK draw.
    """

    data: Dict[str, Dict[str, Any]] = defaultdict(dict)
    _lock = threading.RLock()

    def __init__(self, namespace: tuple):
        super().__init__(namespace)

    def get(self, key: str) -> Optional[Any]:
        namespace_data = InMemoryContextStorage.data.get(self.namespace, None)
        if namespace_data is None:
            return None
        return namespace_data.get(key, None)

    def set(self, key: str, value: Any) -> None:
        with InMemoryContextStorage._lock:
            InMemoryContextStorage.data[self.namespace][key] = value

    def delete(self, key: str) -> None:
        with InMemoryContextStorage._lock:
            namespace_data = InMemoryContextStorage.data.get(self.namespace)
            if namespace_data is not None:
                namespace_data.pop(key, None)
                if not namespace_data:
                    del InMemoryContextStorage.data[self.namespace]

    def get_or_create(self, key: str, factory: Callable[[], Any]) -> Any:
        value = self.get(key)
        if value is not None:
            return value
        with InMemoryContextStorage._lock:
            value = self.get(key)
            if value is None:
                value = factory()
                self.set(key, value)
        return value

    @classmethod
    def clear(cls) -> None:
        with cls._lock:
            cls.data.clear()
