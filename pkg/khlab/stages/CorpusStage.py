import logging
from typing import Any

from tqdm import tqdm

from khlab.io.corpus import CorpusEntry, default_corpus
from khlab.stages.Stage import Stage, StageCallable

logger = logging.getLogger(__name__)


class CorpusStage(Stage):
    """! Iterate over the named diagrams and seeded random braid closures, one substage per diagram"""

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        corpus_size: int = 20,
        seed: int = 0,
        corpus: list[CorpusEntry] | None = None,
        show_progress_bar: bool = False,
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.corpus = corpus if corpus is not None else default_corpus(corpus_size, seed)
        self.seed = seed
        self.show_progress_bar = show_progress_bar

    def run(self):
        entries = tqdm(self.corpus, desc="Corpus") if self.show_progress_bar else self.corpus
        for entry in entries:
            logger.info(f"Processing {entry.name}...")
            sub_stage = self.substage(diagram=entry.diagram, name=entry.name, seed=self.seed)
            for report, extra_info in sub_stage.run():
                yield report, (entry, extra_info)
