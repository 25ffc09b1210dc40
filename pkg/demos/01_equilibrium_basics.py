#!/usr/bin/env python3
"""Walk through the basic equilibrium mechanics of a mixed-fee order flow auction.

The winner of the auction may execute an order worth S - K after observing
the reference price S.  A share alpha of the winning bid is paid upfront,
the rest only on execution, which pushes the execution threshold up to
K + (1 - alpha) * b.  Competition drives the bid to the zero-profit point.
"""

from flowauction import AuctionParams, Uniform, expected_utility, solve_equilibrium

d = Uniform(0.0, 1.0)
K = 0.5

print("Reference price S ~ U[0,1], strike K = 0.5")
print()

# With everything paid upfront the bid cannot erode the option: the
# equilibrium bid is just the option value E max(S - K, 0) = 1/8.
all_upfront = solve_equilibrium(d, AuctionParams(strike=K, alpha=1.0))
print(f"alpha = 1 (all upfront):    b* = {all_upfront.b_star:.6f}  "
      f"P(exec) = {all_upfront.p_exec:.4f}  revenue = {all_upfront.revenue:.6f}")

# With everything contingent, raising the bid raises the effective strike,
# so competitive bidding destroys the option entirely: the bid climbs to
# max support - K, nothing ever executes, and revenue is zero.
all_contingent = solve_equilibrium(d, AuctionParams(strike=K, alpha=0.0))
print(f"alpha = 0 (all contingent): b* = {all_contingent.b_star:.6f}  "
      f"P(exec) = {all_contingent.p_exec:.4f}  revenue = {all_contingent.revenue:.6f}  "
      f"[{all_contingent.status.value}]")
print()

# In between, the bid solves alpha*b = E max(S - K - (1-alpha)b, 0).
print(f"{'alpha':>6} {'b*':>10} {'threshold':>10} {'P(exec)':>9} {'spread':>8} {'revenue':>9}")
for alpha in [0.1, 0.25, 0.5, 0.75, 0.9, 1.0]:
    sol = solve_equilibrium(d, AuctionParams(strike=K, alpha=alpha))
    print(f"{alpha:6.2f} {sol.b_star:10.6f} {sol.threshold:10.6f} "
          f"{sol.p_exec:9.4f} {sol.effective_spread:8.4f} {sol.revenue:9.6f}")
print()
print("More upfront -> lower bid but higher execution, higher revenue, tighter spread.")
print()

# The solved bid really is the zero-profit point:
sol = solve_equilibrium(d, AuctionParams(strike=K, alpha=0.25))
for b in [0.0, sol.b_star / 2, sol.b_star, 2 * sol.b_star]:
    eu = expected_utility(d, AuctionParams(strike=K, alpha=0.25), b)
    marker = "  <- equilibrium" if b == sol.b_star else ""
    print(f"expected utility at bid {b:.6f}: {eu:+.6f}{marker}")
