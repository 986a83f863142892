#!/usr/bin/env python3
# Copyright 2026 The mcftopo Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Solves an LP-format MILP with HiGHS and writes the result as JSON.

Usage: highs_bridge.py MODEL.lp RESULT.json [--time-limit S] [--gap G]
                       [--seed N] [--threads N]
       highs_bridge.py --probe

Any point found is polished before it is written: integral columns are
fixed at their rounded values and the remaining LP is re-solved with tight
tolerances, so the values satisfy the rows without integrality noise.
"""

import argparse
import json
import math
import sys


def _status_name(highspy, status, has_point):
    s = highspy.HighsModelStatus
    if status == s.kOptimal:
        return "optimal"
    if status == s.kInfeasible:
        return "infeasible"
    if status == s.kUnbounded:
        return "unbounded"
    if status in (s.kTimeLimit, s.kIterationLimit, s.kSolutionLimit,
                  s.kInterrupt):
        return "feasible_gap" if has_point else "timeout"
    if status == s.kUnboundedOrInfeasible:
        return "unbounded_or_infeasible"
    return "error"


def _polish(highspy, h, values):
    lp = h.getLp()
    n = lp.num_col_
    integrality = list(lp.integrality_) if len(lp.integrality_) else []
    fixed = highspy.Highs()
    fixed.setOptionValue("output_flag", False)
    fixed.setOptionValue("primal_feasibility_tolerance", 1e-9)
    fixed.setOptionValue("dual_feasibility_tolerance", 1e-9)
    fixed.passModel(lp)
    for j in range(n):
        if integrality and integrality[j] != highspy.HighsVarType.kContinuous:
            v = float(round(values[j]))
            fixed.changeColBounds(j, v, v)
            fixed.changeColIntegrality(j, highspy.HighsVarType.kContinuous)
    fixed.run()
    if fixed.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        return None
    return list(fixed.getSolution().col_value)


def main(argv):
    try:
        import highspy
    except ImportError:
        print("highspy is not installed", file=sys.stderr)
        return 3
    if len(argv) == 1 and argv[0] == "--probe":
        return 0

    parser = argparse.ArgumentParser()
    parser.add_argument("model")
    parser.add_argument("result")
    parser.add_argument("--time-limit", type=float, default=600.0)
    parser.add_argument("--gap", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args(argv)

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", max(args.time_limit, 1e-3))
    h.setOptionValue("mip_rel_gap", args.gap)
    h.setOptionValue("random_seed", args.seed)
    h.setOptionValue("threads", max(args.threads, 1))
    if h.readModel(args.model) == highspy.HighsStatus.kError:
        print("HiGHS could not read " + args.model, file=sys.stderr)
        return 2
    h.run()
    info = h.getInfo()
    status = h.getModelStatus()
    has_point = info.primal_solution_status == 2  # kSolutionStatusFeasible
    values = list(h.getSolution().col_value) if has_point else []
    name = _status_name(highspy, status, has_point)

    result = {
        "status": name,
        "highs_status": h.modelStatusToString(status),
        "has_point": bool(has_point),
        "nodes": int(getattr(info, "mip_node_count", 0) or 0),
        "iterations": int(getattr(info, "simplex_iteration_count", 0) or 0),
        "gap": float(info.mip_gap) if math.isfinite(info.mip_gap) else None,
    }
    if has_point:
        polished = _polish(highspy, h, values)
        result["polished"] = polished is not None
        if polished is not None:
            values = polished
        lp = h.getLp()
        result["values"] = dict(zip(lp.col_names_, values))
    with open(args.result, "w") as f:
        json.dump(result, f)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
