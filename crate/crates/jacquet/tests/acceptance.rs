//! Acceptance battery: one PASS/FAIL line per criterion, driven through the binary.

use std::process::Command;

use serde_json::Value;

const CRITERIA: &[(u32, &str, &[&str])] = &[
    (1, "Rees fiber sums equal normal cone pieces (coordinate families, n <= 4, degree <= 6)", &["rees-fiber-cone"]),
    (2, "graded tables invariant under relabeling of the ideals (l <= 3)", &["rees-labeling-2", "rees-labeling-3", "rees-labeling-3-mixed"]),
    (3, "chart equivariance for |a| <= 3, l <= 3 and the torus action formula", &["rees-equivariance"]),
    (4, "limit stabilizer equals k_Theta + n_Theta on sl2, sl3, sl4", &["stab-a1", "stab-a2", "stab-a3"]),
    (5, "J_{Theta,Theta1}(V) has the weight dimensions of V", &["identity-verma-a1", "identity-verma-a2", "identity-gverma-a2"]),
    (6, "chain rule on sl3 generalized Vermas", &["chain-a", "chain-b"]),
    (7, "per-weight additivity on exact sequences", &["exact-bgg", "exact-principal-series"]),
    (8, "graded pieces of F match Jacquet weight sums", &["filtration-verma", "filtration-ps-1", "filtration-ps-2", "filtration-singular-a2"]),
    (9, "minimal nilpotent exponents with witnesses, k1, k2 in 1..3", &["ulemma-heisenberg"]),
];

fn run_suite(threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_jacquet"))
        .args(["suite", "--threads", threads])
        .env_remove("JACQUET_OUT_DIR")
        .env_remove("JACQUET_THREADS")
        .output()
        .map_err(|e| e.to_string())?;
    if out.stdout.is_empty() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(out.stdout)
}

fn main() {
    let mut failures = 0;
    let first = run_suite("8");
    let parsed: Option<Value> = first.as_ref().ok().and_then(|b| serde_json::from_slice(b).ok());
    for (n, title, names) in CRITERIA {
        let detail = match &parsed {
            None => Some(format!("suite did not run: {:?}", first.as_ref().err())),
            Some(v) => names.iter().find_map(|name| {
                let item = v["items"].as_array()?.iter().find(|i| i["name"] == *name);
                match item {
                    None => Some(format!("{name}: missing from suite")),
                    Some(i) if i["exit_code"] == 0 => None,
                    Some(i) => Some(format!(
                        "{name}: exit {} {}",
                        i["exit_code"],
                        i["report"]["counterexample"].as_str().or(i["error"].as_str()).unwrap_or("")
                    )),
                }
            }),
        };
        match detail {
            None => println!("PASS {n} {title}"),
            Some(d) => {
                failures += 1;
                println!("FAIL {n} {title}: {d}");
            }
        }
    }

    let title = "suite output byte-identical across runs and thread counts 1 and 8";
    let runs = [first, run_suite("1"), run_suite("8")];
    match &runs {
        [Ok(a), Ok(b), Ok(c)] if a == b && a == c => println!("PASS 10 {title}"),
        _ => {
            failures += 1;
            let why: Vec<String> = runs.iter().map(|r| r.as_ref().map_or_else(|e| e.clone(), |b| format!("{} bytes", b.len()))).collect();
            println!("FAIL 10 {title}: {}", why.join(", "));
        }
    }

    if failures > 0 {
        std::process::exit(1);
    }
}
