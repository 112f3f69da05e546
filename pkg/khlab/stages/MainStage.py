from typing import Any

from khlab.stages.Stage import StageCallable


class MainStage:
    """! Not actually a Stage: running it returns (does not yield) the list of results.
    Used as the entry point of every pipeline.
    """

    def __init__(self, list_of_callables: list[StageCallable], **kwargs: Any):
        self.kwargs = kwargs
        self.list_of_callables = list_of_callables

    def run(self) -> list[tuple[Any, Any]]:
        answers: list[tuple[Any, Any]] = []
        for report, extra_info in self.list_of_callables[0](self.list_of_callables[1:], **self.kwargs).run():
            answers.append((report, extra_info))
        return answers
