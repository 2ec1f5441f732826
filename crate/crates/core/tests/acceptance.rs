//! Runs A1..A14 at their desk-scale defaults and prints one line per check.
//! Exits nonzero if any check fails.

use perimac::cli::{run_check, CheckConfig, Profile, CHECK_IDS};

fn main() {
    let mut failed = Vec::new();
    for id in CHECK_IDS {
        let cfg = CheckConfig::new(id, Profile::Desk);
        let line = match run_check(&cfg) {
            Ok(r) => {
                let caps: Vec<String> = r
                    .truncation
                    .iter()
                    .filter(|(k, v)| {
                        k.starts_with("K[")
                            && !v.starts_with("stated 14, effective 14")
                            && !v.starts_with("stated 12, effective 12")
                    })
                    .map(|(k, v)| format!("{k} {}", v.split(", increment").next().unwrap_or(v)))
                    .collect();
                let escalated = if caps.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", caps.join("; "))
                };
                if !r.pass {
                    failed.push(id);
                }
                format!(
                    "{id:<4} {}  abs_err={} tol={}  ({} ms){escalated}{}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.abs_err,
                    r.tolerance,
                    r.runtime_ms.unwrap_or(0),
                    r.reason
                        .map(|why| format!("  reason: {why}"))
                        .unwrap_or_default(),
                )
            }
            Err(e) => {
                failed.push(id);
                format!("{id:<4} FAIL  configuration error: {e}")
            }
        };
        println!("{line}");
    }
    if failed.is_empty() {
        println!("acceptance: all {} checks passed", CHECK_IDS.len());
    } else {
        println!("acceptance: failed {}", failed.join(", "));
        std::process::exit(1);
    }
}
