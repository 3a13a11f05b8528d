"""How one ballot can swing an instant-runoff election.

A worked three-candidate example.  Candidate 0 leads on first choices, 1
and 2 trail; supporters of 0 list 2 second, so where 2's votes go after an
elimination decides the final.  A single ballot can matter in two ways:

* directly - its candidate reaches the final round and the extra vote
  breaks (or creates and wins) the first-place tie;
* indirectly - the extra vote flips which trailing candidate is eliminated,
  and the *other* branch of the count ends with a different winner, not the
  candidate the voter ranked.

The second mechanism is the surprising one: ranking candidate 0 can elect
candidate 1.
"""

from irvpivot import (
    BallotProfile,
    best_ballot,
    expected_utility,
    total_pivot_prob,
)

profile = BallotProfile(
    3,
    {
        (0, 2): 6.0,   # 0-first voters back 2 as insurance
        (1,): 5.0,     # 1-first voters bullet-vote
        (2, 1): 5.0,   # 2-first voters transfer to 1
    },
    max_length=2,
)
print(f"profile: {profile}")
print(f"expected first choices: 0 -> 6, 1 -> 5, 2 -> 5 (16 expected voters)\n")

for ballot in [(0,), (1,), (2,), (0, 1), (2, 0)]:
    rep = total_pivot_prob(profile, ballot)
    print(
        f"ballot {str(ballot):10s} p_direct={rep.p_direct:.5f} "
        f"p_indirect={rep.p_indirect:.5f} p_total={rep.p_total:.5f}"
    )

# Inspect the event decomposition for the bullet vote for 0.
rep = total_pivot_prob(profile, (0,), with_events=True)
top = sorted(rep.events, key=lambda e: -e.probability)[:4]
print("\nlargest pivotal scenarios for ballot (0,):")
for ev in top:
    kind = type(ev).__name__
    if kind == "DirectEvent":
        print(f"  direct  p={ev.probability:.5f} others drop in {ev.drops}, final vs {ev.runner_up}")
    else:
        print(
            f"  indirect p={ev.probability:.5f} would-be order {ev.base} -> "
            f"saving {ev.candidate} in round {ev.round_index} drops {ev.displaced}, "
            f"new order {ev.alternate} (winner {ev.alternate[-1]})"
        )

# The indirect channel shows up in expected utility: even a voter who is
# indifferent about candidate 0 gains or loses from ranking 0, because the
# vote reshapes the elimination order among the others.
u = [0.0, 1.0, 0.3]   # loves 1, lukewarm on 2, indifferent to 0
print("\nutilities (0, 1, 2) =", u)
for ballot in [(1,), (1, 2), (0,), (0, 1)]:
    print(f"  expected utility of {str(ballot):8s} = {expected_utility(profile, ballot, u):+.6f}")

choice, rep = best_ballot(profile, u)
print(f"\nbest ballot for this voter: {choice} (expected utility {rep.expected_utility:+.6f})")
