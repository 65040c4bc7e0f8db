"""Score a metric against pairwise human preference judgments.

Raters compare model outputs in pairs; the metric "agrees" with a
judgment when its scores order the pair the same way.  Ties count as
non-agreement by default.  Inter-rater agreement on the same comparison
gives the ceiling any metric could reach.
"""

from vidmetrics import inter_rater_agreement, rater_agreement
from vidmetrics.studies import PairwisePreference, group_by_comparison

prefs = [
    PairwisePreference("gan_a", "gan_b", "a_better", comparison_id="c1", rater_id="r1"),
    PairwisePreference("gan_a", "gan_b", "a_better", comparison_id="c1", rater_id="r2"),
    PairwisePreference("gan_b", "gan_c", "b_better", comparison_id="c2", rater_id="r1"),
    PairwisePreference("gan_b", "gan_c", "tie", comparison_id="c2", rater_id="r2"),
    PairwisePreference("gan_a", "gan_c", "a_better", comparison_id="c3", rater_id="r1"),
    PairwisePreference("gan_a", "gan_c", "b_better", comparison_id="c3", rater_id="r2"),
]

# lower FVD should mean better, so lower_is_better=True
scores = {"gan_a": 12.0, "gan_b": 30.0, "gan_c": 25.0}

print("metric vs raters:", rater_agreement(prefs, scores, lower_is_better=True))
print("with half credit for ties:",
      rater_agreement(prefs, scores, lower_is_better=True, tie_credit=True))
print("rater vs rater ceiling:",
      inter_rater_agreement(group_by_comparison(prefs)))
