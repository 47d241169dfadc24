#!/usr/bin/env python3
"""End-to-end checks of the command-line interface: exit codes, JSON shapes,
solve -> verify round trips, and the CARPOOL_MAX_ROUTES guard."""

import json
import os
import subprocess
import sys
import tempfile

CLI = sys.argv[1]
FIXTURES = sys.argv[2]

failures = 0


def run(args, env_extra=None, stdin=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([CLI] + args, capture_output=True, text=True,
                          env=env, input=stdin)


def check(name, ok, detail=""):
    global failures
    print(f"{name}: {'ok' if ok else 'FAIL'}" + (f"  [{detail}]" if not ok and detail else ""))
    if not ok:
        failures += 1


def fixture(name):
    return os.path.join(FIXTURES, name + ".json")


# --- solve: solvable instance -> exit 0, verified equilibrium ---------------
r = run(["solve", fixture("parallel")])
check("solve exit 0", r.returncode == 0, r.stderr)
doc = json.loads(r.stdout)
check("solve report all ok", doc["report"]["all_ok"] is True)
check("solve has payments and tolls",
      set(doc) >= {"trips", "payments", "tolls"})
outcome = {k: doc[k] for k in ("trips", "payments", "tolls")}

# --- solve -> verify round trip ----------------------------------------------
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    json.dump(outcome, f)
    outcome_path = f.name
v = run(["verify", fixture("parallel"), outcome_path])
check("verify exit 0 on solver output", v.returncode == 0, v.stderr)
vdoc = json.loads(v.stdout)
check("verify all flags true",
      all(vdoc[k] is True for k in ("feasible", "individual_rationality",
                                    "stability", "budget_balance",
                                    "market_clearing",
                                    "complementary_slackness",
                                    "toll_monotonicity", "all_ok")))

# --- verify: tampered outcomes -> exit 2 with witnesses ----------------------
tampered = json.loads(json.dumps(outcome))
for rider in tampered["payments"]:
    tampered["payments"][rider] = "1000/1"
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    json.dump(tampered, f)
    tampered_path = f.name
t = run(["verify", fixture("parallel"), tampered_path])
check("tampered payments exit 2", t.returncode == 2)
tdoc = json.loads(t.stdout)
check("tampered payments flagged", tdoc["all_ok"] is False and tdoc["witnesses"])

bad_toll = json.loads(json.dumps(outcome))
for edge in bad_toll["tolls"]:
    bad_toll["tolls"][edge] = "0/1"
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    json.dump(bad_toll, f)
    toll_path = f.name
t2 = run(["verify", fixture("parallel"), toll_path])
check("zeroed tolls exit 2", t2.returncode == 2)

# --- solve: nonexistence -> exit 2 -------------------------------------------
w = run(["solve", fixture("wheatstone")])
check("bridge solve exit 2", w.returncode == 2, w.stderr)
wdoc = json.loads(w.stdout)
check("bridge gap reported",
      wdoc["diagnostics"]["lp_value"] == "11/1"
      and wdoc["diagnostics"]["ip_value"] == "10/1")

# --- solve --vcg --------------------------------------------------------------
g = run(["solve", "--vcg", fixture("parallel")])
check("vcg solve exit 0", g.returncode == 0, g.stderr)
gdoc = json.loads(g.stdout)
check("vcg report all ok", gdoc["report"]["all_ok"] is True)

# --- oracle / inspect ----------------------------------------------------------
o = run(["oracle", fixture("wheatstone")])
odoc = json.loads(o.stdout)
check("oracle bridge values", o.returncode == 0
      and odoc["lp_value"] == "11/1" and odoc["ip_value"] == "10/1"
      and odoc["equilibrium_exists"] is False)

i = run(["inspect", fixture("wheatstone")])
idoc = json.loads(i.stdout)
check("inspect bridge shape", i.returncode == 0
      and len(idoc["routes"]) == 3
      and idoc["series_parallel"] is False
      and idoc["sp_witness_edges"]
      and idoc["k_star_total"] == 1
      and idoc["network_capacity"] == 2)

gs = run(["inspect", "--gs-check", fixture("hetero")])
gsdoc = json.loads(gs.stdout)
check("inspect finds the substitutes violation",
      gs.returncode == 0 and any(not r["holds"]
                                 for r in gsdoc["gross_substitutes"]))

# --- error handling -------------------------------------------------------------
e = run(["solve", "/nonexistent/file.json"])
check("missing file exit 1", e.returncode == 1 and e.stderr.strip() != "")

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    f.write('{"nodes": []}')
    bad_path = f.name
b = run(["solve", bad_path])
check("schema error exit 1", b.returncode == 1 and "missing" in b.stderr)

# --- CARPOOL_MAX_ROUTES guard ----------------------------------------------------
m = run(["inspect", fixture("wheatstone")], env_extra={"CARPOOL_MAX_ROUTES": "2"})
check("route cap from the environment exits 1",
      m.returncode == 1 and "route" in m.stderr.lower())
m2 = run(["inspect", "--max-routes", "2", fixture("wheatstone")])
check("route cap from the flag exits 1", m2.returncode == 1)

# --- determinism -------------------------------------------------------------------
a1 = run(["solve", fixture("parallel"), "--seed", "1"])
a2 = run(["solve", fixture("parallel"), "--seed", "2"])
d1, d2 = json.loads(a1.stdout), json.loads(a2.stdout)
d1["diagnostics"].pop("seed", None)
d2["diagnostics"].pop("seed", None)
check("output is seed-independent", d1 == d2)

print("CLI TESTS " + ("PASSED" if failures == 0 else f"FAILED ({failures})"))
sys.exit(0 if failures == 0 else 1)
