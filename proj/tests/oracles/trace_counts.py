"""Counts executed lines of a Python program for several input sizes.

Calls into C builtins are charged their textbook cost at the current size n:
sorting n log n, list.count n, heap push/pop log n. Prints one count per size.
"""
import io
import math
import random
import re
import sys


def run(source, n):
    rng = random.Random(n)
    pair = re.search(r"^\w+, \w+ = map\(int, input\(\)\.split\(\)\)", source, re.M)
    first = source.find("input()")
    lines = [f"{n} {n}" if pair and pair.start() <= first else str(n),
             " ".join(str(rng.randint(-n, n)) for _ in range(n))]
    feed = iter(lines)
    count = 0
    log = math.log2(max(n, 2))
    costs = {"sorted": n * log, "sort": n * log, "count": n, "heappush": log, "heappop": log}

    def tracer(frame, event, arg):
        nonlocal count
        if frame.f_code.co_filename != "<snippet>":
            return None
        if event == "line":
            count += 1
        return tracer

    def profiler(frame, event, arg):
        nonlocal count
        if event == "c_call" and frame.f_code.co_filename == "<snippet>":
            count += costs.get(getattr(arg, "__name__", ""), 0)

    env = {"__name__": "__main__", "input": lambda: next(feed)}
    code = compile(source, "<snippet>", "exec")
    out, sys.stdout = sys.stdout, io.StringIO()
    sys.setrecursionlimit(10000)
    sys.settrace(tracer)
    sys.setprofile(profiler)
    try:
        exec(code, env)
    finally:
        sys.settrace(None)
        sys.setprofile(None)
        sys.stdout = out
    return count


source = open(sys.argv[1]).read()
print(" ".join(str(run(source, int(n))) for n in sys.argv[2:]))
