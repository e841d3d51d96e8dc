//! Executes a parsed session against the containment lab.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use reslab_core::algebra::{Field, FieldSpec, PolyExpr, Polynomial, PrimeField, RationalField, Ring};
use reslab_core::groebner::{intersect, Ideal};
use reslab_core::lab::{
    confirm_witness, containment_check, kfold_noncontainment, product_witness_check, resurgence_grid,
    verify_binomial_expansion, verify_union_groebner, verify_witness, BoundSheet, BoundValue, GridOptions,
    SymbolicSource, Verdict,
};
use reslab_core::limits::{DEFAULT_DEGREE_GUARD, DEFAULT_MACAULAY_THRESHOLD, DEFAULT_SATURATION_CAP};
use reslab_core::toolkit::{
    all_but_one_points, fermat_ideal, fermat_points, ideal_power, ideal_product, ideal_sum, points_defining_ideal,
    rational_points, PointSet,
};
use reslab_core::{Error, Limits};

use crate::report::{CommandReport, ConfigEcho, GridCell, Outcome, Report, Status, SCHEMA};
use crate::session::{BoundCmd, IdealExpr, OrderSpec, PointsExpr, Session, Statement, VerifyCmd};

/// Run configuration. `field` and `order` override the session's ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub field: Option<FieldSpec>,
    pub order: Option<OrderSpec>,
    pub degree_guard: u32,
    pub saturation_cap: usize,
    pub macaulay_threshold: usize,
    /// Worker threads; `None` uses one per core.
    pub jobs: Option<usize>,
    /// Wall-clock budget of each command.
    pub timeout: Option<Duration>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: None,
            order: None,
            degree_guard: DEFAULT_DEGREE_GUARD,
            saturation_cap: DEFAULT_SATURATION_CAP,
            macaulay_threshold: DEFAULT_MACAULAY_THRESHOLD,
            jobs: None,
            timeout: None,
        }
    }
}

impl Config {
    /// Fresh limits for one command; the deadline starts now.
    fn limits(&self) -> Limits {
        let mut limits = Limits {
            degree_guard: self.degree_guard,
            saturation_cap: self.saturation_cap,
            macaulay_threshold: self.macaulay_threshold,
            ..Limits::default()
        };
        if let Some(t) = self.timeout {
            limits = limits.with_timeout(t);
        }
        limits
    }
}

/// Runs every command of `session` in file order. Errors only when the
/// session as a whole cannot run (an unusable field override or thread
/// pool); per-command failures are recorded in the report.
pub fn run(session: &Session, config: &Config) -> Result<Report, String> {
    let go = || -> Result<Report, String> {
        match config.field.unwrap_or(session.ring.field) {
            FieldSpec::Prime(p) => Runner::new(PrimeField::new(p).map_err(|e| e.to_string())?, session, config)?.run(),
            FieldSpec::Rationals => Runner::new(RationalField, session, config)?.run(),
        }
    };
    match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| e.to_string())?
            .install(go),
        None => go(),
    }
}

type Cmd<T> = Result<T, Error>;

struct Runner<'s, F: Field> {
    session: &'s Session,
    config: &'s Config,
    ring: Arc<Ring<F>>,
    ideal_defs: HashMap<&'s str, &'s IdealExpr>,
    point_defs: HashMap<&'s str, &'s PointsExpr>,
    sources: HashMap<String, Arc<SymbolicSource<F>>>,
    point_sets: HashMap<String, Arc<PointSet<F>>>,
}

impl<'s, F: Field> Runner<'s, F> {
    fn new(field: F, session: &'s Session, config: &'s Config) -> Result<Self, String> {
        let order = config.order.unwrap_or(session.ring.order).term_order();
        let ring = Ring::new(field, session.ring.vars.clone(), order).map_err(|e| e.to_string())?;
        Ok(Runner {
            session,
            config,
            ring,
            ideal_defs: HashMap::new(),
            point_defs: HashMap::new(),
            sources: HashMap::new(),
            point_sets: HashMap::new(),
        })
    }

    fn run(mut self) -> Result<Report, String> {
        let mut results = Vec::new();
        for stmt in &self.session.statements {
            match stmt {
                Statement::Ideal { name, expr } => {
                    self.ideal_defs.insert(name, expr);
                }
                Statement::Points { name, expr } => {
                    self.point_defs.insert(name, expr);
                }
                _ => {
                    let start = Instant::now();
                    let limits = self.config.limits();
                    let (status, result, detail) = match self.command(stmt, &limits) {
                        Ok((status, outcome, detail)) => (status, Some(outcome), detail),
                        Err(e) if e.is_resource() => (Status::Indeterminate, None, Some(e.to_string())),
                        Err(e) => (Status::Error, None, Some(e.to_string())),
                    };
                    results.push(CommandReport {
                        index: results.len() + 1,
                        command: stmt.to_string(),
                        status,
                        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                        result,
                        detail,
                    });
                }
            }
        }
        let status = results.iter().map(|r| r.status).max().unwrap_or(Status::Clean);
        let c = self.config;
        Ok(Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            library_version: reslab_core::VERSION.to_string(),
            config: ConfigEcho {
                field: self.ring.field().spec().to_string(),
                order: c.order.unwrap_or(self.session.ring.order).to_string(),
                degree_guard: c.degree_guard,
                saturation_cap: c.saturation_cap,
                macaulay_threshold: c.macaulay_threshold,
                jobs: c.jobs,
                timeout_secs: c.timeout.map(|t| t.as_secs_f64()),
            },
            session: self.session.to_string(),
            results,
            status,
        })
    }

    fn poly(&self, e: &PolyExpr) -> Cmd<Polynomial<F>> {
        e.eval(&self.ring)
    }

    fn points(&mut self, name: &str) -> Cmd<Arc<PointSet<F>>> {
        if let Some(p) = self.point_sets.get(name) {
            return Ok(p.clone());
        }
        let def = self.point_defs[name];
        let field = self.ring.field().clone();
        let dim = self.ring.nvars() - 1;
        let set = match def {
            PointsExpr::List(list) => {
                let origin = vec![field.zero(); self.ring.nvars()];
                let coords = list
                    .iter()
                    .map(|p| p.iter().map(|c| Ok(self.poly(c)?.evaluate(&origin))).collect::<Cmd<Vec<_>>>())
                    .collect::<Cmd<Vec<_>>>()?;
                PointSet::new(&field, dim, coords)?
            }
            PointsExpr::Fermat(n) => {
                if dim != 2 {
                    return Err(Error::ContextMismatch("Fermat points live in a three-variable ring".into()));
                }
                fermat_points(&field, *n)?
            }
            PointsExpr::AllButOne => all_but_one_points(&field, dim)?,
            PointsExpr::Rational => rational_points(&field, dim)?,
        };
        let set = Arc::new(set);
        self.point_sets.insert(name.to_string(), set.clone());
        Ok(set)
    }

    /// The symbolic-power source of a bound ideal: its points when the
    /// binding names them, otherwise the ideal taken as a radical point ideal.
    fn source(&mut self, name: &str, limits: &Limits) -> Cmd<Arc<SymbolicSource<F>>> {
        if let Some(s) = self.sources.get(name) {
            return Ok(s.clone());
        }
        let def = self.ideal_defs[name];
        let source = match def {
            IdealExpr::Points(p) => {
                let pts = self.points(p)?;
                SymbolicSource::from_points(&self.ring, (*pts).clone(), limits)?
            }
            IdealExpr::Fermat(n) => {
                let pts = fermat_points(self.ring.field(), *n)?;
                SymbolicSource::from_points_with_ideal(pts, fermat_ideal(&self.ring, *n)?, limits)?
            }
            other => SymbolicSource::from_radical_ideal((*self.ideal(other, limits)?).clone()),
        };
        let source = Arc::new(source);
        self.sources.insert(name.to_string(), source.clone());
        Ok(source)
    }

    fn ideal(&mut self, e: &IdealExpr, limits: &Limits) -> Cmd<Arc<Ideal<F>>> {
        Ok(match e {
            IdealExpr::Name(n) => match self.ideal_defs[n.as_str()] {
                IdealExpr::Points(_) | IdealExpr::Fermat(_) => Arc::new(self.source(n, limits)?.ideal().clone()),
                def => match self.sources.get(n.as_str()) {
                    Some(s) => Arc::new(s.ideal().clone()),
                    None => self.ideal(def, limits)?,
                },
            },
            IdealExpr::Gens(g) => {
                let polys = g.iter().map(|p| self.poly(p)).collect::<Cmd<Vec<_>>>()?;
                Arc::new(Ideal::new(&self.ring, polys)?)
            }
            IdealExpr::Fermat(n) => Arc::new(fermat_ideal(&self.ring, *n)?),
            IdealExpr::Points(p) => {
                let pts = self.points(p)?;
                Arc::new(points_defining_ideal(&self.ring, &pts, limits)?)
            }
            IdealExpr::Power(inner, n) => match inner.as_ref() {
                IdealExpr::Name(name) => self.source(name, limits)?.ordinary_power(*n)?,
                other => Arc::new(ideal_power(&*self.ideal(other, limits)?, *n)?),
            },
            IdealExpr::Symbolic(name, m) => self.source(name, limits)?.symbolic_power(*m, limits)?,
            IdealExpr::Sum(a, b) => Arc::new(ideal_sum(&*self.ideal(a, limits)?, &*self.ideal(b, limits)?)?),
            IdealExpr::Product(a, b) => {
                Arc::new(ideal_product(&*self.ideal(a, limits)?, &*self.ideal(b, limits)?)?)
            }
            IdealExpr::Intersect(a, b) => {
                Arc::new(intersect(&*self.ideal(a, limits)?, &*self.ideal(b, limits)?, limits)?)
            }
        })
    }

    fn command(&mut self, stmt: &Statement, limits: &Limits) -> Cmd<(Status, Outcome, Option<String>)> {
        match stmt {
            Statement::Check { lhs, rhs, method } => {
                let a = self.ideal(lhs, limits)?;
                let b = self.ideal(rhs, limits)?;
                let (verdict, used) = containment_check(&a, &b, *method, limits)?;
                let mut confirmed_by = Vec::new();
                let (status, detail) = match &verdict {
                    Verdict::Contained => (Status::Clean, None),
                    Verdict::Indeterminate { reason } => (Status::Indeterminate, Some(reason.clone())),
                    Verdict::NotContained { witness } => match confirm_witness(witness, &a, &b, limits) {
                        Ok(ms) => {
                            confirmed_by = ms.iter().map(ToString::to_string).collect();
                            (Status::Clean, None)
                        }
                        Err(e) if e.is_resource() => {
                            (Status::Clean, Some(format!("witness re-verification stopped: {e}")))
                        }
                        Err(e) => (Status::Defect, Some(e.to_string())),
                    },
                };
                let witness = match &verdict {
                    Verdict::NotContained { witness } => Some(witness),
                    _ => None,
                };
                let outcome = Outcome::Check {
                    contained: match verdict {
                        Verdict::Contained => Some(true),
                        Verdict::NotContained { .. } => Some(false),
                        Verdict::Indeterminate { .. } => None,
                    },
                    witness: witness.map(ToString::to_string),
                    witness_degree: witness.and_then(Polynomial::total_degree),
                    method: used.to_string(),
                    confirmed_by,
                };
                Ok((status, outcome, detail))
            }
            Statement::Grid { ideal, m, r, prune, reference } => {
                let source = self.source(ideal, limits)?;
                let options = GridOptions { prune: *prune, reference: *reference };
                let grid = resurgence_grid(&source, *m, *r, &options, limits)?;
                let recheck: Vec<Result<(), String>> = grid
                    .records
                    .par_iter()
                    .filter(|c| c.contained() == Some(false) && !c.is_inferred())
                    .map(|c| match verify_witness(&source, c, limits) {
                        Ok(_) => Ok(()),
                        Err(e) if e.is_resource() => Ok(()),
                        Err(e) => Err(format!("({}, {}): {e}", c.m, c.r)),
                    })
                    .collect();
                let mut problems: Vec<String> = grid.violations.clone();
                problems.extend(recheck.into_iter().filter_map(Result::err));
                let status = if !problems.is_empty() {
                    Status::Defect
                } else if grid.indeterminate_count() > 0 {
                    Status::Indeterminate
                } else {
                    Status::Clean
                };
                let cells = grid
                    .records
                    .iter()
                    .map(|c| GridCell {
                        m: c.m,
                        r: c.r,
                        contained: c.contained(),
                        inferred: c.is_inferred(),
                        ratio: c.ratio().to_string(),
                        method: c.method.to_string(),
                        witness: c.witness().map(ToString::to_string),
                        elapsed_ms: c.elapsed.as_secs_f64() * 1e3,
                    })
                    .collect();
                let outcome = Outcome::Grid {
                    ideal: ideal.clone(),
                    m_max: *m,
                    r_max: *r,
                    cells,
                    rho_lower_bound: grid.rho_lower_bound.map(|b| b.to_string()),
                    extremal_cells: grid.extremal_cells(),
                    reference: grid.reference.map(|q| q.to_string()),
                    consistent_upper_witnessed: grid.consistent_upper_witnessed,
                    violations: grid.violations.clone(),
                    indeterminate: grid.indeterminate_count(),
                };
                let detail = (!problems.is_empty()).then(|| problems.join("; "));
                Ok((status, outcome, detail))
            }
            Statement::Verify(v) => self.verify(v, limits),
            Statement::Bound(b) => {
                let sheet = match b {
                    BoundCmd::Kfold { h, r, k } => BoundSheet::new().with_kfold(*h as i64, *r as i64, *k as i64),
                    BoundCmd::RhoaSum(a, b) => BoundSheet::new().with_rhoa(*a, *b),
                    BoundCmd::RhoSum(a, b) => BoundSheet::new().with_rho(*a, *b),
                };
                let row = sheet.rows()?.remove(0);
                let value = match row.value {
                    BoundValue::Exact(v) => format!("= {v}"),
                    BoundValue::AtLeast(v) => format!(">= {v}"),
                    BoundValue::Between(lo, hi) => format!("in [{lo}, {hi}]"),
                };
                Ok((
                    Status::Clean,
                    Outcome::Bound { quantity: row.quantity, value, rule: row.rule.to_string() },
                    None,
                ))
            }
            Statement::Ideal { .. } | Statement::Points { .. } => unreachable!("bindings are not commands"),
        }
    }

    fn verify(&mut self, v: &VerifyCmd, limits: &Limits) -> Cmd<(Status, Outcome, Option<String>)> {
        let signal = |bad: bool, what: &str| {
            if bad {
                (Status::Defect, Some(what.to_string()))
            } else {
                (Status::Clean, None)
            }
        };
        Ok(match v {
            VerifyCmd::UnionGb { left, right, orders } => {
                let a = self.ideal(left, limits)?;
                let b = self.ideal(right, limits)?;
                let (o1, o2) = match orders {
                    Some((x, y)) => (x.term_order(), y.term_order()),
                    None => (self.ring.order().clone(), self.ring.order().clone()),
                };
                let holds = verify_union_groebner(&a, &b, &o1, &o2, limits)?;
                let (status, detail) = signal(!holds, "union of the two bases is not a Groebner basis of the sum");
                (status, Outcome::UnionGb { holds }, detail)
            }
            VerifyCmd::ProductWitness { f, g, i, j, r, s } => {
                let (f, g) = (self.poly(f)?, self.poly(g)?);
                let (i, j) = (self.ideal(i, limits)?, self.ideal(j, limits)?);
                let (member, method) = product_witness_check(&f, &g, &i, &j, *r, *s, limits)?;
                let (status, detail) = signal(member, "the product of the witnesses lies in the power of the sum");
                (status, Outcome::ProductWitness { member, method: method.to_string() }, detail)
            }
            VerifyCmd::Binomial { left, right, h } => {
                let (p, q) = (self.points(left)?, self.points(right)?);
                let equal = verify_binomial_expansion(&self.ring, &p, &self.ring, &q, *h, limits)?;
                let (status, detail) = signal(!equal, "the two sides of the binomial expansion differ");
                (status, Outcome::Binomial { equal }, detail)
            }
            VerifyCmd::Kfold { ideal, witness, h, r, k } => {
                let source = self.source(ideal, limits)?;
                let w = self.poly(witness)?;
                let out = kfold_noncontainment(&source, &w, *h, *r, *k, limits)?;
                let (status, detail) = signal(!out.noncontained, "the k-fold product witness lies in the ordinary power");
                (
                    status,
                    Outcome::Kfold {
                        noncontained: out.noncontained,
                        power: out.power,
                        symbolic: out.symbolic,
                        method: out.method.to_string(),
                        lower_bound: out.lower_bound.to_string(),
                    },
                    detail,
                )
            }
        })
    }
}
