use std::collections::BTreeSet;

use dyerlashof::coverings::{run_selftest_with, FiniteCovering, SelftestConfig, COMPOSE_LIMIT};
use dyerlashof::dring::{derive_generalized_adem, BasisChange, Direction};
use dyerlashof::fgl::{additive_fgl, fgl_violations, iterated_quotient, lubin_quotient, FormalGroupLaw, LazardRing};
use dyerlashof::qring::{adem_expand, is_admissible_pair, normal_form, PriddyTable, QMonomial, QPolynomial};
use dyerlashof::series::{RingElem, RingMap, CoefficientRing};
use serde_json::{json, Value};

use crate::{Cli, Command, CoverCommand, DlCommand, FglCommand, Hooks, LazardCommand, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawChoice {
    Additive,
    Lazard(u32),
}

impl std::fmt::Display for LawChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LawChoice::Additive => f.write_str("additive"),
            LawChoice::Lazard(d) => write!(f, "lazard:{d}"),
        }
    }
}

pub fn parse_law(s: &str) -> Result<LawChoice, String> {
    if s == "additive" {
        return Ok(LawChoice::Additive);
    }
    let bad = || format!("expected `additive` or `lazard:D` with D >= 1, found {s:?}");
    let d: u32 = s.strip_prefix("lazard:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(LawChoice::Lazard(d))
}

pub enum CommandError {
    Usage(String),
}

fn build_law(choice: LawChoice, truncation: u32) -> Result<FormalGroupLaw, String> {
    match choice {
        LawChoice::Additive => Ok(additive_fgl(truncation)),
        LawChoice::Lazard(d) => LazardRing::new(d)
            .and_then(|l| l.law(truncation))
            .map_err(|e| e.to_string()),
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Text lines and JSON fields accumulated side by side.
struct Builder {
    lines: Vec<String>,
    json: serde_json::Map<String, Value>,
}

impl Builder {
    fn new(command: &str) -> Self {
        let mut json = serde_json::Map::new();
        json.insert("command".into(), json!(command));
        Builder { lines: Vec::new(), json }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, key: &str, v: Value) {
        self.json.insert(key.into(), v);
    }

    fn finish(mut self, passed: bool) -> Report {
        self.line(verdict(passed));
        self.field("pass", json!(passed));
        Report {
            json: Value::Object(self.json),
            text: self.lines.join("\n"),
            passed,
        }
    }
}

pub fn execute(cli: &Cli, hooks: &Hooks<'_>) -> Result<Report, CommandError> {
    match &cli.command {
        Command::Fgl(FglCommand::Check(a)) => fgl_check(a.law, cli.trunc.unwrap_or(8)),
        Command::Fgl(FglCommand::Lubin(a)) => fgl_lubin(a.law, cli.trunc.unwrap_or(8)),
        Command::Fgl(FglCommand::Iterate(a)) => fgl_iterate(a.law, cli.trunc.unwrap_or(6)),
        Command::Lazard(LazardCommand::Dims { max }) => lazard_dims(*max),
        Command::Dl(DlCommand::Adem { indices }) => Ok(dl_adem(indices)),
        Command::Dl(DlCommand::Derive { law, max }) => dl_derive(law.law, *max),
        Command::Dl(DlCommand::Priddy { max_n, max_k }) => dl_priddy(*max_n, *max_k, cli.trunc),
        Command::Dl(DlCommand::BasisChange { max }) => Ok(dl_basis_change(*max)),
        Command::Cover(CoverCommand::Selftest { trials, max_size }) => {
            cover_selftest(*trials, *max_size as usize, cli.seed.unwrap_or(0), hooks)
        }
    }
}

fn fgl_check(choice: LawChoice, n: u32) -> Result<Report, CommandError> {
    let law = build_law(choice, n).map_err(CommandError::Usage)?;
    let mut b = Builder::new("fgl check");
    b.line(format!("law: {choice} (truncation {n})"));
    b.line(format!("F(x, y) = {law}"));
    b.field("law", json!(choice.to_string()));
    b.field("truncation", json!(n));
    b.field("series", json!(law.to_string()));
    let violations = fgl_violations(law.series()).map_err(|e| CommandError::Usage(e.to_string()))?;
    for v in &violations {
        b.line(format!("violation: {v}"));
    }
    b.field("violations", json!(violations));
    Ok(b.finish(violations.is_empty()))
}

fn fgl_lubin(choice: LawChoice, n: u32) -> Result<Report, CommandError> {
    let law = build_law(choice, n).map_err(CommandError::Usage)?;
    let mut b = Builder::new("fgl lubin");
    b.line(format!("law: {choice} (truncation {n})"));
    b.field("law", json!(choice.to_string()));
    b.field("truncation", json!(n));
    let iso = match lubin_quotient(&law) {
        Ok(iso) => iso,
        Err(e) => {
            b.line(format!("quotient: {e}"));
            b.field("error", json!(e.to_string()));
            return Ok(b.finish(false));
        }
    };
    let additive = iso.target().is_additive();
    b.line(format!("h_t(x) = {}", iso.map()));
    b.line(format!("F_t(x, y) = {}", iso.target()));
    b.line(format!("F_t additive: {}", if additive { "yes" } else { "no" }));
    b.field("h_t", json!(iso.map().to_string()));
    b.field("F_t", json!(iso.target().to_string()));
    b.field("additive", json!(additive));
    let morphism = iso.check_morphism();
    let kernel = iso.check_kernel();
    b.line(format!("h_t(F(x, y)) = F_t(h_t(x), h_t(y)): {}", verdict(morphism.is_ok())));
    b.line(format!("h_t vanishes on {{0, t}}: {}", verdict(kernel.is_ok())));
    b.field("checks", json!({"morphism": morphism.is_ok(), "kernel": kernel.is_ok()}));
    Ok(b.finish(morphism.is_ok() && kernel.is_ok()))
}

fn fgl_iterate(choice: LawChoice, n: u32) -> Result<Report, CommandError> {
    let law = build_law(choice, n).map_err(CommandError::Usage)?;
    let mut b = Builder::new("fgl iterate");
    b.line(format!("law: {choice} (truncation {n})"));
    b.field("law", json!(choice.to_string()));
    b.field("truncation", json!(n));
    match iterated_quotient(&law) {
        Ok(it) => {
            b.line(format!("h_ts(x) = {}", it.composite));
            b.line(format!("F_ts(x, y) = {}", it.law()));
            b.line("h_ts = xF(x, t)F(x, s)F(x, F(s, t)): PASS");
            b.line("h_ts vanishes on {0, t, s, F(s, t)}: PASS");
            b.line("symmetry F_ts = F_st: PASS");
            b.field("h_ts", json!(it.composite.to_string()));
            b.field("F_ts", json!(it.law().to_string()));
            b.field("checks", json!({"closed_form": true, "kernel": true, "symmetry": true}));
            Ok(b.finish(true))
        }
        Err(e) => {
            b.line(format!("check failed: {e}"));
            b.field("error", json!(e.to_string()));
            Ok(b.finish(false))
        }
    }
}

/// Monomials of degree `d` in one generator of each degree not of the form `2^k - 1`.
fn expected_rank(d: u32) -> usize {
    let gens: Vec<u32> = (2..=d).filter(|g| !(g + 1).is_power_of_two()).collect();
    let mut counts = vec![0usize; d as usize + 1];
    counts[0] = 1;
    for g in gens {
        for e in g as usize..=d as usize {
            counts[e] += counts[e - g as usize];
        }
    }
    counts[d as usize]
}

fn lazard_dims(max: u32) -> Result<Report, CommandError> {
    let lazard = LazardRing::new(max.max(1)).map_err(|e| CommandError::Usage(e.to_string()))?;
    let ranks = lazard.ranks();
    let mut b = Builder::new("lazard dims");
    let mut rows = Vec::new();
    let mut ok = true;
    for d in 0..=max {
        let rank = ranks.get(&d).copied().unwrap_or(0);
        let expected = expected_rank(d);
        ok &= rank == expected;
        b.line(format!("degree {d}: rank {rank} (polynomial count {expected})"));
        rows.push(json!({"degree": d, "rank": rank, "expected": expected}));
    }
    b.field("ranks", json!(rows));
    Ok(b.finish(ok))
}

fn dl_adem(indices: &[u32]) -> Report {
    let input = QMonomial::new(indices.to_vec());
    let mut b = Builder::new("dl adem");
    b.field("input", json!(input));
    match normal_form(&QPolynomial::monomial(indices.to_vec())) {
        Ok(nf) => {
            b.line(format!("{input} = {nf}"));
            b.field("normal_form", json!(nf));
            b.field("text", json!(nf.to_string()));
            b.finish(true)
        }
        Err(e) => {
            b.line(format!("{input}: {e}"));
            b.field("error", json!(e.to_string()));
            b.finish(false)
        }
    }
}

fn dl_derive(choice: LawChoice, max: u32) -> Result<Report, CommandError> {
    let amax = max + (max - 1) / 2;
    let law = build_law(choice, amax).map_err(CommandError::Usage)?;
    let d = derive_generalized_adem(&law, amax).map_err(|e| CommandError::Usage(e.to_string()))?;
    let kill = RingMap::new(
        d.ring.clone(),
        CoefficientRing::gf2(),
        vec![RingElem::zero(); d.ring.num_generators()],
    )
    .map_err(|e| CommandError::Usage(e.to_string()))?;

    let mut b = Builder::new("dl derive");
    b.line(format!("law: {choice}, m + n <= {max} (bound {amax})"));
    b.field("law", json!(choice.to_string()));
    b.field("max", json!(max));
    let mut rules = Vec::new();
    let mut discrepancies = Vec::new();
    for m in 0..=max {
        for n in 0..=max - m {
            if is_admissible_pair(m, n) {
                continue;
            }
            let expected: BTreeSet<(u32, u32)> = adem_expand(m, n)
                .terms()
                .map(|t| (t.indices()[0], t.indices()[1]))
                .collect();
            let Some(rule) = d.rule(m, n) else {
                discrepancies.push(json!({"lhs": [m, n], "reason": "no rule"}));
                b.line(format!("q_{m} q_{n}: no rule"));
                continue;
            };
            b.line(d.format_rule(rule));
            rules.push(d.rule_json(rule));
            let mut found = BTreeSet::new();
            for (c, op) in &rule.rhs {
                let c0 = kill.apply(c);
                if !c0.is_zero() && !found.insert(*op) {
                    found.remove(op);
                }
            }
            if found != expected {
                discrepancies.push(json!({"lhs": [m, n], "reason": "differs from the closed form"}));
            }
        }
    }
    b.line(format!(
        "{} rules, {} unsolved, {} residual relations, {} discrepancies with the closed form",
        rules.len(),
        d.unsolved.len(),
        d.residual.len(),
        discrepancies.len()
    ));
    b.field("rules", json!(rules));
    b.field("unsolved", json!(d.unsolved));
    b.field("residual", json!(d.residual.len()));
    b.field("discrepancies", json!(discrepancies));
    Ok(b.finish(discrepancies.is_empty()))
}

fn dl_priddy(max_n: u32, max_k: u32, trunc: Option<u32>) -> Result<Report, CommandError> {
    let n = trunc.unwrap_or((max_n + 2 * max_k).max(1));
    if n < max_n + 2 * max_k {
        return Err(CommandError::Usage(format!(
            "--trunc {n} is below max-n + 2 max-k = {}",
            max_n + 2 * max_k
        )));
    }
    let table = PriddyTable::new(n).map_err(|e| CommandError::Usage(e.to_string()))?;
    let mut b = Builder::new("dl priddy");
    b.field("truncation", json!(n));
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 0..=max_k {
        for m in 0..=max_n {
            let q = table.q(m, k).map_err(|e| CommandError::Usage(e.to_string()))?;
            let text = table.format(q);
            b.line(format!("q_{m}(b_{k}) = {text}"));
            rows.push(json!({"n": m, "k": k, "value": text}));
        }
        let bk = table.b(k);
        ok &= table.q(0, k).ok() == Some(&table.ring().mul(&bk, &bk));
    }
    b.field("table", json!(rows));
    Ok(b.finish(ok))
}

fn dl_basis_change(max: u32) -> Report {
    let bc = BasisChange::new(max);
    let dq = bc.matrix(Direction::DToQ);
    let qd = bc.matrix(Direction::QToD);
    let mut b = Builder::new("dl basis-change");
    b.field("max", json!(max));
    let mut rows = Vec::new();
    for n in 0..=max as usize {
        let (q, d) = (bc.format_row(Direction::DToQ, n), bc.format_row(Direction::QToD, n));
        b.line(q.clone());
        b.line(d.clone());
        rows.push(json!({"q": q, "d": d}));
    }
    let round_trip = bc.is_identity(&bc.multiply(&dq, &qd)) && bc.is_identity(&bc.multiply(&qd, &dq));
    let reduced = bc.reduce(&dq).map(|m| bc.is_identity(&m)).unwrap_or(false);
    b.line(format!("round trip: {}", verdict(round_trip)));
    b.line(format!("identity when [RP^i] = 0 for i > 0: {}", verdict(reduced)));
    b.field("rows", json!(rows));
    b.field("checks", json!({"round_trip": round_trip, "reduces_to_identity": reduced}));
    b.finish(round_trip && reduced)
}

fn cover_selftest(trials: usize, max_size: usize, seed: u64, hooks: &Hooks<'_>) -> Result<Report, CommandError> {
    let config = SelftestConfig { trials, max_size, seed };
    let builtin = |p: &FiniteCovering, q: &FiniteCovering| p.compose(q, COMPOSE_LIMIT);
    let compose = hooks.compose.unwrap_or(&builtin);
    let report = run_selftest_with(config, compose).map_err(|e| CommandError::Usage(e.to_string()))?;
    let mut b = Builder::new("cover selftest");
    b.line(format!("seed: {seed}"));
    b.line(format!("trials: {trials}, max size: {max_size}"));
    for (law, tally) in &report.laws {
        b.line(format!("{law}: {}/{trials}", tally.passed));
    }
    let total = report.splitting_passed + report.splitting_failed;
    b.line(format!("splitting s(x f) = f mod 2: {}/{total}", report.splitting_passed));
    if let Some(c) = &report.counterexample {
        b.line(format!("counterexample: {}", serde_json::to_string(c).expect("serializable")));
    }
    b.field("seed", json!(seed));
    b.field("report", json!(report));
    Ok(b.finish(report.passed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_syntax() {
        assert_eq!(parse_law("additive"), Ok(LawChoice::Additive));
        assert_eq!(parse_law("lazard:4"), Ok(LawChoice::Lazard(4)));
        assert!(parse_law("lazard:0").is_err());
        assert!(parse_law("lazard").is_err());
    }

    #[test]
    fn polynomial_counts() {
        let counts: Vec<usize> = (0..=6).map(expected_rank).collect();
        assert_eq!(counts, vec![1, 0, 1, 0, 2, 1, 3]);
    }
}
