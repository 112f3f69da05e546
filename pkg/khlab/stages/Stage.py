from abc import ABCMeta, abstractmethod
from typing import Any, Generator, Protocol, runtime_checkable


class Stage(metaclass=ABCMeta):
    """! Abstract superclass for the pipeline steps"""

    def __init__(
        self,
        list_of_callables: list["StageCallable"],
        **kwargs: Any,
    ):
        """
        @param list_of_callables: callables with a signature compatible with this __init__ that return a Stage;
        the first one builds the substage, the rest is handed down to it
        @param kwargs: configuration for this stage and the ones below it
        """
        self.kwargs = kwargs
        self.list_of_callables = list_of_callables
        if self.is_leaf() and list_of_callables not in ([], tuple(), set(), None):
            raise ValueError("Leaf stage received a non empty list_of_callables")

        if list_of_callables in ([], tuple(), set(), None) and not self.is_leaf():
            raise ValueError(
                "List of callables empty on a non leaf stage, so nothing can be generated. "
                "The final callable in list_of_callables must build a stage with is_leaf() == True"
            )

    @abstractmethod
    def run(self) -> Generator[tuple[Any, Any], None, None]: ...

    def __iter__(self):
        return self.run()

    def is_leaf(self) -> bool:
        """! @return True if the stage yields results without substages"""
        return False

    def substage(self, **overrides: Any) -> "Stage":
        kwargs = {**self.kwargs, **overrides}
        return self.list_of_callables[0](self.list_of_callables[1:], **kwargs)


@runtime_checkable
class StageCallable(Protocol):
    def __call__(self, list_of_callables: list["StageCallable"], **kwargs: Any) -> Stage: ...
