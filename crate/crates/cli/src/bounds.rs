//! Bound evaluation for one quotient and the randomized sweeps. Every
//! applicable inequality is checked and reported; anything a resource cap
//! prevents is itemized as a skip, never silently passed.

use serde::{Deserialize, Serialize};

use stanley::error::{Error, Result};
use stanley::homology::{depth_and_pd, Field};
use stanley::ideal::{MonomialIdeal, Quotient, QuotientShape};
use stanley::lattice::build_lcm_lattice_capped;
use stanley::posets::{order_dimension_with, DimOptions};
use stanley::sdepth::{sdepth_with_options, SdepthOptions};
use stanley::simplicial::SimplicialComplex;

use crate::experiment::{
    enumerate_complexes, random_complex, random_quotient, Caps, ExperimentConfig,
};

/// A quantity that is either computed or skipped for a stated reason.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "detail")]
pub enum Measured {
    Value(i64),
    Skipped(String),
}

impl Measured {
    pub fn value(&self) -> Option<i64> {
        match self {
            Measured::Value(v) => Some(*v),
            Measured::Skipped(_) => None,
        }
    }

    fn from_result<T: Into<i64>>(r: Result<T>) -> Result<Measured> {
        match r {
            Ok(v) => Ok(Measured::Value(v.into())),
            Err(Error::ResourceCap(why)) | Err(Error::BudgetExhausted(why)) => {
                Ok(Measured::Skipped(format!("cap: {why}")))
            }
            Err(Error::DimBoundExceeded { d_max }) => {
                Ok(Measured::Skipped(format!("cap: d_max {d_max} exceeded")))
            }
            Err(other) => Err(other),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Measured::Value(v) => v.to_string(),
            Measured::Skipped(why) => format!("skipped ({why})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Geq,
    Leq,
    Eq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Geq => ">=",
            Relation::Leq => "<=",
            Relation::Eq => "=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Geq => lhs >= rhs,
            Relation::Leq => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome", content = "detail")]
pub enum Outcome {
    Holds,
    Fails,
    Skipped(String),
}

/// One checked inequality with both sides evaluated.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub relation: Relation,
    pub lhs: Measured,
    pub rhs: Measured,
    pub outcome: Outcome,
}

impl BoundCheck {
    fn evaluate(name: &str, lhs: &Measured, relation: Relation, rhs: &Measured) -> BoundCheck {
        let outcome = match (lhs.value(), rhs.value()) {
            (Some(l), Some(r)) => {
                if relation.holds(l, r) {
                    Outcome::Holds
                } else {
                    Outcome::Fails
                }
            }
            _ => {
                let why = [lhs, rhs]
                    .iter()
                    .filter_map(|m| match m {
                        Measured::Skipped(w) => Some(w.clone()),
                        Measured::Value(_) => None,
                    })
                    .collect::<Vec<_>>()
                    .join("; ");
                Outcome::Skipped(why)
            }
        };
        BoundCheck {
            name: name.into(),
            relation,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            outcome,
        }
    }

    pub fn render(&self) -> String {
        format!(
            "{:-44} {} {} {} : {}",
            self.name,
            self.lhs.render(),
            self.relation.symbol(),
            self.rhs.render(),
            match &self.outcome {
                Outcome::Holds => "ok".to_string(),
                Outcome::Fails => "FAIL".to_string(),
                Outcome::Skipped(why) => format!("skip ({why})"),
            }
        )
    }
}

/// Everything measured and checked for one quotient.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: u64,
    pub shape: String,
    pub n: usize,
    pub generators_numerator: usize,
    pub generators_denominator: usize,
    pub lcm_number: usize,
    pub lattice_size: Measured,
    pub dim_lattice: Measured,
    pub sdepth: Measured,
    pub depth: Measured,
    pub checks: Vec<BoundCheck>,
}

impl InstanceReport {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.outcome == Outcome::Fails)
            .count()
    }

    pub fn skips(&self) -> Vec<String> {
        let mut out = vec![];
        for m in [&self.lattice_size, &self.dim_lattice, &self.sdepth, &self.depth] {
            if let Measured::Skipped(why) = m {
                if why.starts_with("cap") {
                    out.push(format!("instance {}: {}", self.index, why));
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "instance {:>4}  shape {:<4} n={} gens {}+{}  l={}  |L|={}  dimL={}  sdepth={}  depth={}\n",
            self.index,
            self.shape,
            self.n,
            self.generators_numerator,
            self.generators_denominator,
            self.lcm_number,
            self.lattice_size.render(),
            self.dim_lattice.render(),
            self.sdepth.render(),
            self.depth.render(),
        ));
        for check in &self.checks {
            out.push_str("  ");
            out.push_str(&check.render());
            out.push('\n');
        }
        out
    }
}

fn shape_label(shape: QuotientShape) -> &'static str {
    match shape {
        QuotientShape::Ideal => "I",
        QuotientShape::RingQuotient => "S/I",
        QuotientShape::Proper => "I/J",
    }
}

/// Computes every applicable invariant of `Q` under the caps and evaluates
/// every inequality the theory promises for its shape.
pub fn check_bounds(q: &Quotient, index: u64, caps: &Caps) -> Result<InstanceReport> {
    let n = q.n_vars() as i64;
    let shape = q.shape();
    let chain = q.lcm_number()?;
    let l = chain.length() as i64;
    if !chain.is_strict() {
        return Err(Error::Invariant("lcm witness chain is not strict".into()));
    }

    let lattice = build_lcm_lattice_capped(q, caps.max_lattice_elements);
    let (lattice_size, lattice_length, dim_lattice) = match &lattice {
        Ok(lat) => {
            let opts = DimOptions {
                d_max: caps.d_max,
                node_budget: Some(caps.node_budget),
            };
            let dim = Measured::from_result(
                order_dimension_with(&lat.as_poset(), opts).map(|(d, _)| d as i64),
            )?;
            (
                Measured::Value(lat.len() as i64),
                Measured::Value(lat.length() as i64),
                dim,
            )
        }
        Err(Error::ResourceCap(why)) => {
            let skip = Measured::Skipped(format!("cap: {why}"));
            (skip.clone(), skip.clone(), skip)
        }
        Err(other) => return Err(other.clone()),
    };

    let sdepth = Measured::from_result(
        sdepth_with_options(
            q,
            &SdepthOptions {
                g: None,
                max_points: Some(caps.max_poset_points),
                node_budget: Some(caps.node_budget),
            },
        )
        .map(|cert| cert.value as i64),
    )?;

    // exact depth only for the shapes S/I and I
    let depth_target: Option<&MonomialIdeal> = match shape {
        QuotientShape::Ideal => Some(q.numerator()),
        QuotientShape::RingQuotient => Some(q.denominator()),
        QuotientShape::Proper => None,
    };
    let depth = match depth_target {
        None => Measured::Skipped("exact depth computed only for S/I and I".into()),
        Some(ideal) if ideal.is_unit() => {
            Measured::Skipped("depth of the full ring is trivially n".into())
        }
        Some(ideal) => {
            let summary = depth_and_pd(ideal, Field::Rationals)?;
            Measured::Value(match shape {
                QuotientShape::Ideal => summary.depth_ideal as i64,
                _ => summary.depth_ring_quotient as i64,
            })
        }
    };

    let mut checks = vec![];
    let val = Measured::Value;

    // the length of the lcm lattice is the lcm number
    checks.push(BoundCheck::evaluate(
        "lattice length = l",
        &lattice_length,
        Relation::Eq,
        &val(l),
    ));
    // lcm-number bound for the Stanley depth, in the uniform quotient form
    checks.push(BoundCheck::evaluate(
        "sdepth >= n - l + 1",
        &sdepth,
        Relation::Geq,
        &val(n - l + 1),
    ));
    // order-dimension bound
    let dim_rhs = match dim_lattice.value() {
        Some(d) => val(n - d),
        None => dim_lattice.clone(),
    };
    checks.push(BoundCheck::evaluate(
        "sdepth >= n - dim L",
        &sdepth,
        Relation::Geq,
        &dim_rhs,
    ));

    match shape {
        QuotientShape::Ideal => {
            let ideal = q.numerator();
            let dim_plus = match dim_lattice.value() {
                Some(d) => val(n - d + 1),
                None => dim_lattice.clone(),
            };
            checks.push(BoundCheck::evaluate(
                "sdepth(I) >= n - dim L + 1",
                &sdepth,
                Relation::Geq,
                &dim_plus,
            ));
            checks.push(BoundCheck::evaluate(
                "depth(I) >= n - l + 1",
                &depth,
                Relation::Geq,
                &val(n - l + 1),
            ));
            checks.push(BoundCheck::evaluate(
                "depth(I) >= n - dim L + 1",
                &depth,
                Relation::Geq,
                &dim_plus,
            ));
            if ideal.is_squarefree() {
                let rank = ideal.rank_over_rationals() as i64;
                let indeg = ideal.indeg()? as i64;
                checks.push(BoundCheck::evaluate(
                    "sdepth(I) >= n - rank + 1",
                    &sdepth,
                    Relation::Geq,
                    &val(n - rank + 1),
                ));
                checks.push(BoundCheck::evaluate(
                    "sdepth(I) >= indeg",
                    &sdepth,
                    Relation::Geq,
                    &val(indeg),
                ));
                checks.push(BoundCheck::evaluate(
                    "l <= n - indeg + 1",
                    &val(l),
                    Relation::Leq,
                    &val(n - indeg + 1),
                ));
                checks.push(BoundCheck::evaluate(
                    "l <= rank",
                    &val(l),
                    Relation::Leq,
                    &val(rank),
                ));
            }
            // Stanley inequality whenever the small-invariant criterion applies
            if l <= 3 || dim_lattice.value().is_some_and(|d| d <= 3) {
                checks.push(BoundCheck::evaluate(
                    "sdepth(I) >= depth(I)",
                    &sdepth,
                    Relation::Geq,
                    &depth,
                ));
            }
        }
        QuotientShape::RingQuotient => {
            // l here is l(S/J) = l(J) + 1
            let l_j = l - 1;
            checks.push(BoundCheck::evaluate(
                "depth(S/I) >= n - l(I)",
                &depth,
                Relation::Geq,
                &val(n - l_j),
            ));
            let dim_rhs = match dim_lattice.value() {
                Some(d) => val(n - d),
                None => dim_lattice.clone(),
            };
            checks.push(BoundCheck::evaluate(
                "depth(S/I) >= n - dim L",
                &depth,
                Relation::Geq,
                &dim_rhs,
            ));
            let ideal = q.denominator();
            if ideal.is_squarefree() && !ideal.is_zero() {
                let rank = ideal.rank_over_rationals() as i64;
                let indeg = ideal.indeg()? as i64;
                checks.push(BoundCheck::evaluate(
                    "sdepth(S/I) >= n - rank",
                    &sdepth,
                    Relation::Geq,
                    &val(n - rank),
                ));
                checks.push(BoundCheck::evaluate(
                    "sdepth(S/I) >= indeg - 1",
                    &sdepth,
                    Relation::Geq,
                    &val(indeg - 1),
                ));
            }
            if l_j <= 3 || dim_lattice.value().is_some_and(|d| d <= 3) {
                checks.push(BoundCheck::evaluate(
                    "sdepth(S/I) >= depth(S/I)",
                    &sdepth,
                    Relation::Geq,
                    &depth,
                ));
            }
        }
        QuotientShape::Proper => {}
    }

    Ok(InstanceReport {
        index,
        shape: shape_label(shape).into(),
        n: q.n_vars(),
        generators_numerator: q.numerator().num_generators(),
        generators_denominator: q.denominator().num_generators(),
        lcm_number: l as usize,
        lattice_size,
        dim_lattice,
        sdepth,
        depth,
        checks,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportHeader {
    pub config: ExperimentConfig,
    pub model: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub checks_skipped: usize,
    pub skips: Vec<String>,
}

impl Summary {
    fn absorb_checks(&mut self, checks: &[BoundCheck]) {
        for check in checks {
            match &check.outcome {
                Outcome::Holds => self.checks_passed += 1,
                Outcome::Fails => self.checks_failed += 1,
                Outcome::Skipped(_) => self.checks_skipped += 1,
            }
        }
    }
}

/// The full sweep report: header, per-instance rows in index order, and the
/// aggregate summary. Serialization is deterministic for a fixed config.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub header: ReportHeader,
    pub rows: Vec<InstanceReport>,
    pub complex_rows: Vec<ComplexReport>,
    pub summary: Summary,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "index,shape,n,gens_numerator,gens_denominator,l,lattice_size,dim_lattice,sdepth,depth,check,relation,lhs,rhs,outcome\n",
        );
        for row in &self.rows {
            for check in &row.checks {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    row.index,
                    row.shape.replace(',', ";"),
                    row.n,
                    row.generators_numerator,
                    row.generators_denominator,
                    row.lcm_number,
                    csv_field(&row.lattice_size),
                    csv_field(&row.dim_lattice),
                    csv_field(&row.sdepth),
                    csv_field(&row.depth),
                    check.name.replace(',', ";"),
                    check.relation.symbol(),
                    csv_field(&check.lhs),
                    csv_field(&check.rhs),
                    match &check.outcome {
                        Outcome::Holds => "ok".into(),
                        Outcome::Fails => "fail".into(),
                        Outcome::Skipped(w) => format!("skip: {}", w.replace(',', ";")),
                    }
                ));
            }
        }
        for row in &self.complex_rows {
            for check in &row.checks {
                out.push_str(&format!(
                    "{},complex,{},{},0,0,,,,,{},{},{},{},{}\n",
                    row.index,
                    row.n,
                    row.facets,
                    check.name.replace(',', ";"),
                    check.relation.symbol(),
                    csv_field(&check.lhs),
                    csv_field(&check.rhs),
                    match &check.outcome {
                        Outcome::Holds => "ok".into(),
                        Outcome::Fails => "fail".into(),
                        Outcome::Skipped(w) => format!("skip: {}", w.replace(',', ";")),
                    }
                ));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "sweep: seed {} count {} model: {}\n\n",
            self.header.config.seed, self.header.config.sample_count, self.header.model
        );
        for row in &self.rows {
            out.push_str(&row.render());
        }
        for row in &self.complex_rows {
            out.push_str(&row.render());
        }
        out.push_str(&format!(
            "\nsummary: {} instances, {} checks ok, {} failed, {} skipped\n",
            self.summary.instances,
            self.summary.checks_passed,
            self.summary.checks_failed,
            self.summary.checks_skipped
        ));
        for skip in &self.summary.skips {
            out.push_str(&format!("  skip: {skip}\n"));
        }
        out
    }

    pub fn has_failures(&self) -> bool {
        self.summary.checks_failed > 0
    }
}

fn csv_field(m: &Measured) -> String {
    match m {
        Measured::Value(v) => v.to_string(),
        Measured::Skipped(w) => format!("skip: {}", w.replace(',', ";")),
    }
}

/// Randomized sweep over quotients drawn from `cfg`.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<BoundReport> {
    let mut rows = vec![];
    let mut summary = Summary::default();
    for index in 0..cfg.sample_count as u64 {
        let q = random_quotient(cfg, index)?;
        let row = check_bounds(&q, index, &cfg.caps)?;
        summary.instances += 1;
        summary.absorb_checks(&row.checks);
        summary.skips.extend(row.skips());
        rows.push(row);
    }
    Ok(BoundReport {
        header: ReportHeader {
            config: cfg.clone(),
            model: cfg.model_description(),
        },
        rows,
        complex_rows: vec![],
        summary,
    })
}

/// One row of the simplicial-side sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexReport {
    pub index: u64,
    pub n: usize,
    pub facets: usize,
    pub vertex_decomposable: bool,
    pub checks: Vec<BoundCheck>,
}

impl ComplexReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "complex {:>4}  n={} facets={}  vertex decomposable: {}\n",
            self.index, self.n, self.facets, self.vertex_decomposable
        );
        for check in &self.checks {
            out.push_str("  ");
            out.push_str(&check.render());
            out.push('\n');
        }
        out
    }
}

/// Checks the vertex-decomposability consequences for one complex: the
/// depth of the face ring equals the minimum facet size, and the
/// Stanley-Reisner ideal satisfies the Stanley inequality.
pub fn check_complex(c: &SimplicialComplex, index: u64, caps: &Caps) -> Result<ComplexReport> {
    let n = c.n_vertices() as i64;
    let vd = c.is_vertex_decomposable()?;
    let mut checks = vec![];
    if vd.is_decomposable() {
        let min_facet = c.min_facet_size()? as i64;
        let ideal = c.stanley_reisner_ideal()?;
        if ideal.is_zero() {
            // the full simplex: the face ring is the polynomial ring itself
            checks.push(BoundCheck::evaluate(
                "depth(K[D]) = min facet size",
                &Measured::Value(n),
                Relation::Eq,
                &Measured::Value(min_facet),
            ));
        } else {
            let summary = depth_and_pd(&ideal, Field::Rationals)?;
            checks.push(BoundCheck::evaluate(
                "depth(K[D]) = min facet size",
                &Measured::Value(summary.depth_ring_quotient as i64),
                Relation::Eq,
                &Measured::Value(min_facet),
            ));
            let sdepth = Measured::from_result(
                sdepth_with_options(
                    &Quotient::ideal(ideal.clone())?,
                    &SdepthOptions {
                        g: None,
                        max_points: Some(caps.max_poset_points),
                        node_budget: Some(caps.node_budget),
                    },
                )
                .map(|cert| cert.value as i64),
            )?;
            checks.push(BoundCheck::evaluate(
                "sdepth(I_D) >= depth(I_D)",
                &sdepth,
                Relation::Geq,
                &Measured::Value(summary.depth_ideal as i64),
            ));
        }
    }
    Ok(ComplexReport {
        index,
        n: c.n_vertices(),
        facets: c.facet_masks().len(),
        vertex_decomposable: vd.is_decomposable(),
        checks,
    })
}

/// The conjecture-oriented sweep: random ideals filtered by small lcm
/// number or lattice dimension, every complex on up to 4 vertices, and
/// random complexes on 5 vertices.
pub fn run_conjecture_sweep(cfg: &ExperimentConfig) -> Result<BoundReport> {
    let mut rows = vec![];
    let mut summary = Summary::default();
    for index in 0..cfg.sample_count as u64 {
        let ideal = crate::experiment::random_monomial_ideal(cfg, index)?;
        for q in [
            Quotient::ideal(ideal.clone())?,
            Quotient::ring_quotient(ideal.clone())?,
        ] {
            let row = check_bounds(&q, index, &cfg.caps)?;
            summary.instances += 1;
            summary.absorb_checks(&row.checks);
            summary.skips.extend(row.skips());
            rows.push(row);
        }
    }
    let mut complex_rows = vec![];
    let mut cindex = 0u64;
    for n in 1..=4 {
        for c in enumerate_complexes(n) {
            let row = check_complex(&c, cindex, &cfg.caps)?;
            summary.instances += 1;
            summary.absorb_checks(&row.checks);
            complex_rows.push(row);
            cindex += 1;
        }
    }
    for index in 0..cfg.sample_count as u64 {
        let c = random_complex(cfg.seed ^ 0x5eed, index, 5, 5)?;
        let row = check_complex(&c, cindex, &cfg.caps)?;
        summary.instances += 1;
        summary.absorb_checks(&row.checks);
        complex_rows.push(row);
        cindex += 1;
    }
    Ok(BoundReport {
        header: ReportHeader {
            config: cfg.clone(),
            model: format!(
                "{}; plus all complexes on <= 4 vertices and {} random complexes on 5",
                cfg.model_description(),
                cfg.sample_count
            ),
        },
        rows,
        complex_rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use stanley::monomial::Monomial;

    fn staircase_in_three_vars() -> Quotient {
        let i = MonomialIdeal::from_generators(
            3,
            vec![
                Monomial::new(vec![2, 0, 0]),
                Monomial::new(vec![1, 1, 0]),
                Monomial::new(vec![0, 2, 0]),
            ],
        )
        .unwrap();
        Quotient::ring_quotient(i).unwrap()
    }

    #[test]
    fn staircase_bounds_as_printed() {
        let report = check_bounds(&staircase_in_three_vars(), 0, &Caps::default()).unwrap();
        assert_eq!(report.failures(), 0);
        // l(S/I) = 4, so the lcm bound for sdepth(S/I) is n - l(I) = 0
        assert_eq!(report.lcm_number, 4);
        let lcm_bound = report
            .checks
            .iter()
            .find(|c| c.name == "sdepth >= n - l + 1")
            .unwrap();
        assert_eq!(lcm_bound.rhs, Measured::Value(0));
        // dim L = 2, so the dimension bound is 1
        assert_eq!(report.dim_lattice, Measured::Value(2));
        let dim_bound = report
            .checks
            .iter()
            .find(|c| c.name == "sdepth >= n - dim L")
            .unwrap();
        assert_eq!(dim_bound.rhs, Measured::Value(1));
        assert_eq!(report.sdepth, Measured::Value(1));
        assert_eq!(report.depth, Measured::Value(1));
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = ExperimentConfig {
            sample_count: 8,
            quotient_shapes: true,
            ..ExperimentConfig::new(99, 8)
        };
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(!a.has_failures());
    }

    #[test]
    fn complex_checks_on_the_triangle_boundary() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let report = check_complex(&c, 0, &Caps::default()).unwrap();
        assert!(report.vertex_decomposable);
        assert_eq!(report.checks.len(), 2);
        assert!(report.checks.iter().all(|c| c.outcome == Outcome::Holds));
    }

    #[test]
    fn disjoint_edges_are_filtered_out() {
        let c = SimplicialComplex::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let report = check_complex(&c, 0, &Caps::default()).unwrap();
        assert!(!report.vertex_decomposable);
        assert!(report.checks.is_empty());
    }
}
