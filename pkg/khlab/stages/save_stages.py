import json
import logging
import os
from typing import Any

import yaml

from khlab.stages.Stage import Stage, StageCallable
from khlab.utils import json_repr_handler, pickle_save

logger = logging.getLogger(__name__)


def _make_parent(filename: str):
    dirname = os.path.dirname(filename)
    if dirname:
        os.makedirs(dirname, exist_ok=True)


def report_filename(pattern: str, report: Any, suffix: str) -> str:
    """! Fill the `?` of a filename pattern with the kind of report and a suffix"""
    return pattern.replace("?", f"{type(report).__name__}_{suffix}")


class CompleteSaveStage(Stage):
    """! Pass through all results of the substages, saving each one as json and as a yaml copy"""

    def __init__(self, list_of_callables: list[StageCallable], *, dump_filename_pattern: str, **kwargs: Any):
        """
        @param dump_filename_pattern: output filename; a `?` in it is replaced per report
        """
        super().__init__(list_of_callables, **kwargs)
        self.dump_filename_pattern = dump_filename_pattern

    def run(self):
        self.kwargs["dump_filename_pattern"] = self.dump_filename_pattern
        substage = self.list_of_callables[0](self.list_of_callables[1:], **self.kwargs)

        for idx, (report, extra_info) in enumerate(substage.run()):
            filename = report_filename(self.dump_filename_pattern, report, f"{idx}_complete")
            self.save_to_json(report, filename=filename)
            yaml_name = os.path.splitext(filename)[0] + ".yml"
            self.save_to_yaml(json_name=filename, yaml_name=yaml_name)
            logger.info(f"Saved {report} to {filename} and {yaml_name}")
            yield report, extra_info

    @staticmethod
    def save_to_json(obj: object, filename: str):
        _make_parent(filename)
        with open(filename, "w", encoding="UTF-8") as fp:
            json.dump(obj, fp, default=json_repr_handler, indent=4)

    @staticmethod
    def save_to_yaml(json_name: str, yaml_name: str):
        _make_parent(yaml_name)
        with open(json_name, "r", encoding="UTF-8") as fp:
            res = json.load(fp)
        with open(yaml_name, "w", encoding="UTF-8") as fp:
            yaml.dump(res, fp, Dumper=yaml.SafeDumper)


class SimpleSaveStage(Stage):
    """! Pass through all results of the substages, saving each one in the requested format.

    `json` writes the full json representation, `tsv` the homology table and `pretty` the fixed-width one.
    """

    def __init__(
        self,
        list_of_callables: list[StageCallable],
        *,
        dump_filename_pattern: str,
        output_format: str = "json",
        **kwargs: Any,
    ):
        super().__init__(list_of_callables, **kwargs)
        self.dump_filename_pattern = dump_filename_pattern
        self.output_format = output_format

    def run(self):
        self.kwargs["dump_filename_pattern"] = self.dump_filename_pattern
        substage = self.list_of_callables[0](self.list_of_callables[1:], **self.kwargs)

        for report, extra_info in substage.run():
            filename = report_filename(self.dump_filename_pattern, report, "simple")
            _make_parent(filename)
            with open(filename, "w", encoding="UTF-8") as fp:
                fp.write(render(report, self.output_format))
            logger.info(f"Saved {report} to {filename}")
            yield report, extra_info


def render(report: Any, output_format: str = "json") -> str:
    match output_format:
        case "json":
            return json.dumps(report, default=json_repr_handler, indent=2) + "\n"
        case "simple":
            return json.dumps(report, default=lambda obj: json_repr_handler(obj, simple=True), indent=2) + "\n"
        case "tsv" | "pretty":
            method = "to_tsv" if output_format == "tsv" else "to_pretty"
            if not hasattr(report, method):
                raise ValueError(f"{type(report).__name__} has no {output_format} rendering; use json")
            return getattr(report, method)()
        case _:
            raise NotImplementedError(f"Output format {output_format} is not supported, use json, simple, tsv or pretty")


class PickleSaveStage(Stage):
    """! Dump the list of reports a reduce stage passes as extra_info into a pickle file"""

    def __init__(self, list_of_callables: list[StageCallable], *, pickle_filename: str, **kwargs: Any):
        super().__init__(list_of_callables, **kwargs)
        self.pickle_filename = pickle_filename

    def run(self):
        substage = self.list_of_callables[0](self.list_of_callables[1:], **self.kwargs)
        all_reports: list[Any] = []
        for report, extra_info in substage.run():
            all_reports = [r for (r, _) in extra_info]
            yield report, extra_info

        _make_parent(self.pickle_filename)
        pickle_save(all_reports, self.pickle_filename)
        logger.info(f"Saved pickled list of {len(all_reports)} reports to {self.pickle_filename}.")
