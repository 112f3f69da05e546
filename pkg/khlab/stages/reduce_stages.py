import logging

from khlab.reports import VerificationReport
from khlab.stages.Stage import Stage

logger = logging.getLogger(__name__)


class SummaryStage(Stage):
    """! Reduce all verification reports of the substages into one pass/fail summary"""

    def run(self):
        substage: Stage = self.list_of_callables[0](self.list_of_callables[1:], **self.kwargs)

        all_reports = []
        summary = VerificationReport("summary")
        for report, extra_info in substage.run():
            assert isinstance(report, VerificationReport)
            summary.merge(report)
            all_reports.append((report, extra_info))
        if not all_reports:
            logger.warning("No diagrams were verified; the summary passes vacuously")
        logger.info(f"Verified {len(all_reports)} diagrams: passed {summary.passed}")
        yield summary, all_reports
