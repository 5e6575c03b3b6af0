//! Text rendering for traces and audit reports.
//!
//! Traces are drawn from public views only: a face-down card always prints as `?`.

use std::fmt::Write;

use cardmpc::audit::{AuditReport, Counterexample, Mode};
use cardmpc::{ProtocolRun, Suit};

pub type Frame = (String, Vec<Vec<Option<Suit>>>);

fn grid(out: &mut String, view: &[Vec<Option<Suit>>]) {
    for (r, row) in view.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map_or("?".to_string(), |s| s.to_string()))
            .collect();
        writeln!(out, "  {:>3} | {}", r + 1, cells.join(" ")).unwrap();
    }
}

pub fn trace(run: &ProtocolRun, frames: &[Frame]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "protocol: {}  k={}  n={}",
        run.protocol,
        run.inputs.k(),
        run.inputs.n()
    )
    .unwrap();
    for (label, view) in frames {
        writeln!(out, "{label}").unwrap();
        grid(&mut out, view);
    }
    writeln!(out, "transcript:").unwrap();
    for e in &run.transcript.events {
        writeln!(out, "  {} row {}: {}", e.step, e.row, e.pattern).unwrap();
    }
    writeln!(out, "shuffles used: {}", run.shuffles_used).unwrap();
    writeln!(out, "output: {}", run.output).unwrap();
    out
}

pub fn audit(r: &AuditReport) -> String {
    let mut out = String::new();
    let mode = match r.mode {
        Mode::Exact => "exact",
        Mode::Sampled => "sampled (statistical, not a proof)",
    };
    writeln!(out, "audit: {}  k={}  n={}  mode: {mode}", r.protocol, r.k, r.n).unwrap();
    writeln!(out, "definition: {}", r.definition).unwrap();
    let unit = match r.mode {
        Mode::Exact => "tapes per input",
        Mode::Sampled => "samples",
    };
    writeln!(out, "universe: {} {unit}", r.universe).unwrap();
    for c in &r.classes {
        writeln!(
            out,
            "  output {}: {} inputs, {} distinct transcripts, final reveal over {} patterns ({})",
            c.output,
            c.inputs,
            c.distribution.counts().len(),
            c.final_reveal.support,
            match c.final_reveal.uniform {
                Some(true) => "uniform",
                Some(false) => "non-uniform",
                None => "estimated",
            }
        )
        .unwrap();
    }
    if let Some(s) = &r.statistic {
        writeln!(
            out,
            "statistic: {} groups tested, worst margin {:.4} (threshold {})",
            s.groups_tested, s.worst_margin, s.tv_threshold
        )
        .unwrap();
    }
    match &r.counterexample {
        Some(Counterexample::Exact {
            output,
            input_a,
            input_b,
            transcript,
            count_a,
            count_b,
        }) => writeln!(
            out,
            "counterexample: output {output}, inputs {input_a:?} vs {input_b:?}: transcript {transcript} occurs {count_a} vs {count_b} times"
        )
        .unwrap(),
        Some(Counterexample::Statistical {
            output,
            player,
            value,
            feature,
            tv,
            critical,
            group_samples,
        }) => writeln!(
            out,
            "counterexample: output {output}, player {player} = {value}: {feature} tv {tv:.4} > {critical:.4} over {group_samples} samples"
        )
        .unwrap(),
        None => {}
    }
    writeln!(out, "verdict: {}", if r.passed() { "pass" } else { "fail" }).unwrap();
    out
}
