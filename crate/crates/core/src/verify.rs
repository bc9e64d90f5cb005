//! The full verification suite for one (n, q).

use std::fmt;

use crate::chartable::{
    canonical_fusions, char_table_closed, fuse, verify_fusion_on_relations, verify_identities, verify_idempotents,
    IDEMPOTENT_BUDGET,
};
use crate::error::{Error, Result};
use crate::scheme::algebra::ADJACENCY_BUDGET;
use crate::scheme::axioms::PAIR_BUDGET;
use crate::scheme::{
    build_adjacency_matrices, spot_check_representatives, verify_adjacency_algebra, verify_algebra_closure,
    verify_relation_matrix, BuildMode, RelationMatrix, SchemeDescriptor,
};
use crate::unitary::{UnitarySpace, ENUMERATION_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: u32,
    pub q: u32,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn record(&mut self, name: &str, outcome: Result<String>) -> bool {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
        passed
    }

    /// One line per check, then notes.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.checks.iter().map(ToString::to_string).collect();
        out.extend(self.notes.iter().map(|n| format!("note: {n}")));
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification of n = {}, q = {}", self.n, self.q)?;
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        let verdict = match self.first_failure() {
            None => "all checks passed".to_string(),
            Some(c) => format!("first failing check: {}", c.name),
        };
        writeln!(f, "{verdict}")
    }
}

/// Runs every check that fits the budgets. Within the enumeration budget
/// the tensor is built both ways; beyond it only the closed forms are
/// checked for internal consistency.
pub fn run_verification(n: u32, q: u32, seed: u64) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut report = VerificationReport {
        n,
        q,
        ..Default::default()
    };
    let enumerable = (q as u128).checked_pow(2 * n).is_some_and(|v| v <= ENUMERATION_BUDGET);
    let us = if enumerable { Some(UnitarySpace::new(n, q)?) } else { None };

    let built = match &us {
        Some(us) => SchemeDescriptor::from_space(us, BuildMode::Both),
        None => {
            report.notes.push("beyond the enumeration budget, closed forms only".into());
            SchemeDescriptor::build(n, q, BuildMode::Closed)
        }
    };
    let name = if us.is_some() { "oracle equivalence" } else { "closed-form invariants" };
    let sd = match built {
        Ok(sd) => {
            let r = sd.rank();
            report.record(name, Ok(format!("{} intersection numbers, rank {r}", r * r * r)));
            sd
        }
        Err(e) => {
            report.record(name, Err(e));
            return Ok(report);
        }
    };
    report.record(
        "valencies",
        Ok(sd.valencies().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
    );

    let mut rm = None;
    if let Some(us) = &us {
        report.record(
            "representatives",
            spot_check_representatives(us, sd.tensor(), 5, seed).map(|_| "5 random pairs per relation".into()),
        );
        let pairs = (us.len() as u128).pow(2);
        if pairs <= PAIR_BUDGET {
            let m = RelationMatrix::from_space(us)?;
            let axioms = verify_relation_matrix(&m, &sd, seed);
            let outcome = match axioms.violations.first() {
                None => Ok(format!("{pairs} pairs in {} relations", axioms.rank)),
                Some(v) => Err(Error::Invariant(v.to_string())),
            };
            report.record("scheme axioms", outcome);
            rm = Some(m);
        } else {
            report.notes.push(format!("{pairs} pairs exceed the pair budget, axioms not checked exhaustively"));
        }
    }
    report.record("algebra closure", verify_algebra_closure(&sd).map(|_| "B_iB_j".into()));
    if let Some(m) = rm.as_ref().filter(|m| m.size() <= ADJACENCY_BUDGET) {
        let outcome = build_adjacency_matrices(m).and_then(|adj| verify_adjacency_algebra(&adj, &sd));
        report.record("adjacency algebra", outcome.map(|_| "A_iA_j = Σ p_ij^h A_h".into()));
    }

    let witness = sd.commutativity_witness();
    let outcome = match (q == 2, witness) {
        (true, None) => Ok("commutative".into()),
        (false, Some(first)) => {
            let (h, i, j) = ((q as usize), (q * q - 1) as usize, (q * q) as usize);
            let (a, b) = (sd.p(h, i, j), sd.p(h, j, i));
            if a != b {
                Ok(format!(
                    "non-commutative, witness ({h},{i},{j}) with counts ({a},{b}); first violation {first:?}"
                ))
            } else {
                Ok(format!("non-commutative, first violation {first:?}"))
            }
        }
        (true, Some((h, i, j))) => Err(Error::Invariant(format!("q = 2 but p_{{{i}{j}}}^{h} ≠ p_{{{j}{i}}}^{h}"))),
        (false, None) => Err(Error::Invariant(format!("q = {q} but the scheme is commutative"))),
    };
    report.record("commutativity", outcome);
    if n < 4 {
        report.notes.push("T empty".into());
    }

    if q == 2 {
        let ct = match char_table_closed(n) {
            Ok(ct) => ct,
            Err(e) => {
                report.record("character table", Err(e));
                return Ok(report);
            }
        };
        report.record(
            "character table",
            verify_identities(&ct, sd.tensor()).map(|names| names.join(", ")),
        );
        if let Some(m) = rm.as_ref().filter(|m| m.size() <= IDEMPOTENT_BUDGET) {
            let outcome = build_adjacency_matrices(m).and_then(|adj| verify_idempotents(&ct, &adj));
            report.record("primitive idempotents", outcome.map(|_| String::new()));
        }
        for (fname, blocks) in canonical_fusions(n) {
            let outcome = fuse(&ct, &blocks).and_then(|f| {
                if let Some(m) = &rm {
                    verify_fusion_on_relations(m, &f, seed)?;
                }
                Ok(format!("{} classes", f.table.dim() - 1))
            });
            report.record(&format!("fusion {fname}"), outcome);
        }
    }
    Ok(report)
}
