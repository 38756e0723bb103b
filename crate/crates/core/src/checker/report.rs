use std::fmt::Write;

use serde::Serialize;

use super::{SuiteParams, SuiteResult};

// Field order here is the record layout.
#[derive(Serialize)]
struct Record<'a> {
    suite: &'a str,
    params: &'a SuiteParams,
    cases_run: u64,
    proven: u64,
    consistent: u64,
    refuted: u64,
    failures: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time: Option<f64>,
}

/// One JSON object per line. Wall times only appear when `timings` is set,
/// so the default output is identical across runs.
pub fn machine(results: &[SuiteResult], timings: bool) -> String {
    let mut out = String::new();
    for r in results {
        let rec = Record {
            suite: &r.suite,
            params: &r.params,
            cases_run: r.cases_run,
            proven: r.proven,
            consistent: r.consistent,
            refuted: r.refuted,
            failures: &r.failures,
            wall_time: timings.then_some(r.wall_time),
        };
        out.push_str(&serde_json::to_string(&rec).expect("plain data serializes"));
        out.push('\n');
    }
    out
}

pub fn markdown(results: &[SuiteResult], timings: bool) -> String {
    let mut out = String::new();
    if let Some(p) = results.first().map(|r| r.params) {
        let _ = writeln!(
            out,
            "bound={} max_level={} chain_length={} seed={}\n",
            p.bound, p.max_level, p.chain_length, p.seed
        );
    }
    out.push_str("| suite | cases | proven | consistent | refuted | result |");
    out.push_str(if timings { " time (s) |\n" } else { "\n" });
    out.push_str("|---|---:|---:|---:|---:|---|");
    out.push_str(if timings { "---:|\n" } else { "\n" });
    for r in results {
        let _ = write!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.suite,
            r.cases_run,
            r.proven,
            r.consistent,
            r.refuted,
            if r.passed() { "PASS" } else { "FAIL" }
        );
        if timings {
            let _ = write!(out, " {:.3} |", r.wall_time);
        }
        out.push('\n');
    }
    for r in results.iter().filter(|r| !r.failures.is_empty()) {
        let _ = writeln!(out, "\n### {} failures\n", r.suite);
        for f in &r.failures {
            let _ = writeln!(out, "- {f}");
        }
        if r.refuted > r.failures.len() as u64 {
            let _ = writeln!(out, "- ... {} more", r.refuted - r.failures.len() as u64);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(wall_time: f64) -> SuiteResult {
        SuiteResult {
            suite: "level-partition".into(),
            params: SuiteParams::default(),
            cases_run: 3,
            proven: 2,
            consistent: 0,
            refuted: 1,
            failures: vec!["7: bad".into()],
            wall_time,
        }
    }

    #[test]
    fn machine_is_stable() {
        let line = machine(&[sample(1.5)], false);
        assert_eq!(line, machine(&[sample(9.0)], false));
        assert_eq!(
            line,
            "{\"suite\":\"level-partition\",\"params\":{\"bound\":10000,\"max_level\":50,\"chain_length\":8,\"seed\":24301},\
             \"cases_run\":3,\"proven\":2,\"consistent\":0,\"refuted\":1,\"failures\":[\"7: bad\"]}\n"
        );
        assert!(machine(&[sample(1.5)], true).contains("\"wall_time\":1.5"));
    }

    #[test]
    fn markdown_lists_failures() {
        let md = markdown(&[sample(0.0)], false);
        assert!(md.contains("| level-partition | 3 | 2 | 0 | 1 | FAIL |"));
        assert!(md.contains("- 7: bad"));
    }
}
