//! The four report commands.

use std::time::Instant;

use centpoly::cochar::{
    analyze, codimensions, format_rational, hooks, restriction_report, t_generation_report, verify_sandwich,
    AlgebraOracle, CocharacterDecomposition, GrassmannOracle, MatrixOracle, ShapeSource,
};
use centpoly::combinatorics::{factorial, rectangle_growth, YoungTableau};
use centpoly::freealg::{multilinearize, t_ideal_multilinear, triple_commutator, MultilinearPolynomial};
use centpoly::grassmann::{check_lemma_cancellation2, is_identity_g};
use centpoly::matalg::{
    check_property_g, check_property_l, g_multilinearization_ratio, g_poly, gluing_constant, is_central_mk,
    is_identity_mk, lower_bound_construction, regev_polynomial, capelli_tableau,
};
use centpoly::{BigRational, BigUint, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::config::RunConfig;
use crate::report::{Check, Record, Report};
use crate::sampling::cancellation_inputs;
use crate::RunError;

const MEMORY_WARN_GIB: f64 = 2.0;

/// Above this degree the cancellation check samples the identity span
/// instead of walking every spanning element.
const EXHAUSTIVE_SPANNING_DEGREE: usize = 5;

/// Annotation carried by every floating-point field.
pub const GROWTH_PRECISION: &str = "f64 from exact integers; relative error < 1e-12";

/// Shape pairs for the gluing checks.
pub const GLUING_PAIRS: [(&str, &str); 5] = [
    ("2,2", "1,1"),
    ("2,2", "2,2"),
    ("3,1", "2"),
    ("2,2", "1"),
    ("1,1", "1,1"),
];

fn multiplicities(d: &CocharacterDecomposition) -> Value {
    let mut m = Map::new();
    for (p, c) in d.iter() {
        m.insert(p.to_string(), c.into());
    }
    Value::Object(m)
}

fn rational(r: &BigRational) -> Value {
    format_rational(r).into()
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn warn_memory(oracle: &dyn AlgebraOracle, n: usize) {
    let gib = oracle.estimated_bytes(n) / (1u64 << 30) as f64;
    if gib > MEMORY_WARN_GIB {
        eprintln!("warning: {} at n={n} may use about {gib:.1} GiB", oracle.name());
    }
}

struct Timer<'a> {
    cfg: &'a RunConfig,
    start: Instant,
}

impl<'a> Timer<'a> {
    fn start(cfg: &'a RunConfig) -> Self {
        Timer {
            cfg,
            start: Instant::now(),
        }
    }

    fn lap(&mut self, what: &str) {
        if self.cfg.timing {
            eprintln!("[timing] {what}: {:.3}s", self.start.elapsed().as_secs_f64());
        }
        self.start = Instant::now();
    }
}

fn positive_degree(n: usize) -> Result<(), RunError> {
    if n == 0 {
        return Err(Error::PreconditionViolated("degrees start at 1".into()).into());
    }
    Ok(())
}

fn pow2(e: usize) -> u64 {
    1u64 << e
}

pub fn cmd_grassmann(cfg: &RunConfig, report: &mut Report) -> Result<(), RunError> {
    let g = GrassmannOracle;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut timer = Timer::start(cfg);
    for n in cfg.n.iter() {
        positive_degree(n)?;
        warn_memory(&g, n);
        let a = analyze(&g, n, &cfg.budget)?;
        let mut rec = Record::new("grassmann")
            .field("n", n)
            .field("c_n", a.codims.c)
            .field("c_n_z", a.codims.cz)
            .field("delta_n", a.codims.delta)
            .field("cocharacter", multiplicities(&a.plain))
            .field("central_cocharacter", multiplicities(&a.central))
            .field("d_module", multiplicities(&a.d_module))
            .columns(&["n", "c_n", "c_n_z", "delta_n", "pass"]);

        let c = pow2(n - 1);
        let cz = if n >= 2 { pow2(n - 2) } else { 1 };
        rec.check(Check::new("c_n = 2^(n-1)", a.codims.c == c));
        rec.check(Check::new("c_n^z = 2^(n-2)", a.codims.cz == cz));
        rec.check(Check::new("delta_n = 2^(n-2)", a.codims.delta == c - cz));
        rec.check(Check::new(
            "cocharacter: every hook once",
            a.plain == CocharacterDecomposition::indicator(n, hooks(n, None)),
        ));
        rec.check(Check::new(
            "central cocharacter: even-leg hooks once",
            a.central == CocharacterDecomposition::indicator(n, hooks(n, Some(0))),
        ));
        rec.check(Check::new(
            "D-module: odd-leg hooks once",
            a.d_module == CocharacterDecomposition::indicator(n, hooks(n, Some(1))),
        ));
        rec.check(Check::new(
            "central multiplicities <= plain",
            a.central.is_dominated_by(&a.plain),
        ));

        if n >= 2 {
            let r = restriction_report(n, &cfg.budget)?;
            let mut m = Map::new();
            m.insert("codimension_match".into(), r.codimension_match.into());
            m.insert("branching_match".into(), r.branching_match.into());
            m.insert(
                "system_solution".into(),
                r.system_solution.as_ref().map_or(Value::Null, |s| s.clone().into()),
            );
            rec.set("restriction", Value::Object(m));
            rec.check(Check::new("restriction isomorphism", r.holds()));
        } else {
            rec.set("restriction", Value::Null);
        }

        if n <= 6 {
            let t = t_generation_report(n, &cfg.budget)?;
            let mut m = Map::new();
            m.insert("spanning_set".into(), t.spanning_set_size.into());
            m.insert("contained".into(), t.contained.into());
            m.insert("rank".into(), t.rank.into());
            m.insert("target".into(), t.target.into());
            rec.set("t_generation", Value::Object(m));
            rec.check(Check::new("T-generation", t.holds()));
        } else {
            rec.set("t_generation", Value::Null);
        }

        if n >= 2 {
            let d = n - 1;
            let spanning = t_ideal_multilinear(&[triple_commutator()], d)?;
            let samples = cancellation_inputs(&mut rng, d, &spanning, cfg.samples);
            let exhaustive = d <= EXHAUSTIVE_SPANNING_DEGREE;
            let listed: &[MultilinearPolynomial] = if exhaustive { &spanning } else { &[] };
            let inputs: Vec<&MultilinearPolynomial> = listed.iter().chain(samples.iter()).collect();
            let identities = inputs.iter().filter(|h| is_identity_g(h)).count();
            let failures = inputs.iter().filter(|h| !check_lemma_cancellation2(h)).count();
            let mut m = Map::new();
            m.insert("degree".into(), d.into());
            m.insert("spanning_set".into(), spanning.len().into());
            m.insert("spanning_checked".into(), exhaustive.into());
            m.insert("samples".into(), samples.len().into());
            m.insert("identities".into(), identities.into());
            m.insert("failures".into(), failures.into());
            rec.set("cancellation", Value::Object(m));
            rec.check(
                Check::new("x_n h central iff h identity", failures == 0)
                    .with_detail(format!("{failures} of {} inputs fail", inputs.len())),
            );
        } else {
            rec.set("cancellation", Value::Null);
        }

        report.emit(&rec)?;
        timer.lap(&format!("grassmann n={n}"));
    }
    Ok(())
}

pub fn cmd_matrix(cfg: &RunConfig, report: &mut Report) -> Result<(), RunError> {
    let k = cfg.k;
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be positive".into()).into());
    }
    let oracle = MatrixOracle { k };
    let mut timer = Timer::start(cfg);
    for n in cfg.n.iter() {
        positive_degree(n)?;
        warn_memory(&oracle, n);
        let sandwich = if k >= 2 && n >= 2 {
            Some(verify_sandwich(n, k, &cfg.budget)?)
        } else {
            None
        };
        let (c, cz, delta) = match &sandwich {
            Some(s) => (s.c_n, s.cz_n, s.delta),
            None => {
                let cd = codimensions(&oracle, n, &cfg.budget)?;
                (cd.c, cd.cz, cd.delta)
            }
        };
        let nf = factorial(n);
        let mut rec = Record::new("matrix")
            .field("n", n)
            .field("k", k)
            .field("c_n", c)
            .field("c_n_z", cz)
            .field("delta_n", delta)
            .field("identity_dim", big(&(&nf - BigUint::from(c))))
            .field("central_dim", big(&(&nf - BigUint::from(cz))))
            .columns(&["n", "k", "c_n", "c_n_z", "delta_n", "lambda", "f_lambda", "pass"]);
        if k == 1 {
            rec.check(Check::new("c_n = 1", c == 1));
            rec.check(Check::new("every polynomial central", cz == 0));
        }
        match &sandwich {
            Some(s) => {
                let source = match s.source {
                    ShapeSource::Construction => "construction",
                    ShapeSource::Search => "search",
                };
                rec.set("lambda", s.lambda.to_string());
                rec.set("tableau", s.tableau.to_string());
                rec.set("source", source);
                rec.set("f_lambda", big(&s.f_lambda));
                let fd = format!("f={} delta={}", s.f_lambda, s.delta);
                rec.check(Check::new("f^lambda <= delta_n", s.f_lambda <= BigUint::from(s.delta)).with_detail(fd));
                rec.check(Check::new("delta_n <= c_n", s.delta <= s.c_n));
                rec.check(Check::new("f^lambda <= c_n^z", s.f_lambda <= BigUint::from(s.cz_n)));
            }
            None => {
                rec.set("lambda", Value::Null);
                rec.set("f_lambda", Value::Null);
            }
        }
        report.emit(&rec)?;
        timer.lap(&format!("matrix k={k} n={n}"));
    }
    Ok(())
}

const CAPELLI_COLUMNS: [&str; 3] = ["check", "value", "pass"];

fn capelli_record(check: &str) -> Record {
    Record::new("regev").field("check", check).columns(&CAPELLI_COLUMNS)
}

pub fn cmd_regev(cfg: &RunConfig, report: &mut Report) -> Result<(), RunError> {
    let k = cfg.k;
    let kk = k * k;
    let mut timer = Timer::start(cfg);

    for s in [2, 3] {
        let l = check_property_l(k, s)?;
        let mut rec = capelli_record("property_l")
            .field("sets", s)
            .field("terms", l.terms)
            .field("tuples", l.tuples)
            .field("value", l.abs_scalar.as_ref().map_or(Value::Null, rational))
            .field("positive", l.positive)
            .field("negative", l.negative);
        rec.check(Check::new(
            "common nonzero |scalar| on every bijection tuple",
            l.property_l,
        ));
        rec.check(Check::new("alternating in each alphabet", l.alternating));
        rec.check(Check::new("proper central", l.proper_central));
        report.emit(&rec)?;
        timer.lap(&format!("property L s={s}"));
    }

    let gv = check_property_g(k, 2)?;
    let mut rec = capelli_record("property_g")
        .field("sets", 2)
        .field("value", gv.as_ref().map_or(Value::Null, rational));
    rec.check(Check::new("common nonzero |scalar| on every bijection", gv.is_some()));
    report.emit(&rec)?;

    let l2 = MultilinearPolynomial::from_nc(&regev_polynomial(k, 2)?, 2 * kk)?;
    let mut rec = capelli_record("l_direct").field("sets", 2).field("value", Value::Null);
    rec.check(Check::new("central on all unit tuples", is_central_mk(&l2, k)));
    rec.check(Check::new("not an identity", !is_identity_mk(&l2, k)));
    report.emit(&rec)?;
    timer.lap("L direct");

    let g2 = multilinearize(&g_poly(k, 2)?, 2)?;
    let mut rec = capelli_record("g2_multilinear")
        .field("sets", 2)
        .field("terms", g2.len())
        .field("value", Value::Null);
    rec.check(Check::new("central on all unit tuples", is_central_mk(&g2, k)));
    rec.check(Check::new("not an identity", !is_identity_mk(&g2, k)));
    report.emit(&rec)?;

    let d = g_multilinearization_ratio(k, 2)?;
    let mut rec = capelli_record("g2_ratio")
        .field("tableau", capelli_tableau(k, 2)?.to_string())
        .field("value", d.as_ref().map_or(Value::Null, rational));
    rec.check(Check::new(
        "multilinearized g2 = d e_T, d != 0",
        d.as_ref().is_some_and(|d| *d != BigRational::from_integer(0.into())),
    ));
    report.emit(&rec)?;
    timer.lap("g2");

    for (left, right) in GLUING_PAIRS {
        let lt = YoungTableau::row_reading(&left.parse()?);
        let rt = YoungTableau::row_reading(&right.parse()?);
        let d = gluing_constant(&lt, &rt)?;
        let mut rec = capelli_record("gluing")
            .field("left", left)
            .field("right", right)
            .field("value", d.as_ref().map_or(Value::Null, rational));
        let positive = d.as_ref().is_some_and(|d| *d > BigRational::from_integer(0.into()));
        rec.check(Check::new("e_T(glued) = d e_T(left) e_T(right), d > 0", positive));
        report.emit(&rec)?;
    }
    timer.lap("gluing");

    for n in cfg.n.iter() {
        let lb = lower_bound_construction(n, k)?;
        let mut rec = Record::new("lower_bound")
            .field("n", n)
            .field("k", k)
            .field("m", lb.m)
            .field("r", lb.r)
            .field("case", lb.case.number())
            .field("lambda", lb.lambda.to_string())
            .field("tableau", lb.tableau.to_string())
            .field("polynomial", lb.polynomial.to_string())
            .field("witness", lb.witness.to_string())
            .field("value", lb.value.to_string())
            .field("already_done", lb.already_done)
            .field("f_lambda", big(&lb.f_lambda))
            .columns(&["n", "lambda", "polynomial", "witness", "value", "pass"]);
        if lb.already_done {
            let ok = lb.value.is_scalar() && !lb.value.is_zero();
            rec.check(Check::new("rectangle polynomial takes a nonzero scalar", ok));
        } else {
            rec.check(Check::new("witness value non-central", lb.non_central));
        }
        report.emit(&rec)?;
        timer.lap(&format!("lower bound n={n}"));
    }
    Ok(())
}

pub fn cmd_growth(cfg: &RunConfig, report: &mut Report) -> Result<(), RunError> {
    let k = cfg.k;
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be positive".into()).into());
    }
    let mut prev: Option<f64> = None;
    for m in cfg.m.iter() {
        if m == 0 {
            return Err(Error::PreconditionViolated("rectangle width must be positive".into()).into());
        }
        let v = rectangle_growth(k, m);
        let mut rec = Record::new("rectangle_growth")
            .field("k", k)
            .field("m", m)
            .field("rectangle_growth", v)
            .field("precision", GROWTH_PRECISION)
            .columns(&["k", "m", "rectangle_growth", "pass"]);
        if k == 1 {
            rec.check(Check::new("constant 1", v == 1.0));
        } else if let Some(p) = prev {
            rec.check(Check::new("strictly increasing in m", v > p));
        }
        if k == 2 && m == 100 {
            rec.check(Check::new("value > 3.4 at m = 100", v > 3.4));
        }
        report.emit(&rec)?;
        prev = Some(v);
    }

    let oracle = MatrixOracle { k };
    let mut timer = Timer::start(cfg);
    for n in cfg.n.iter() {
        positive_degree(n)?;
        warn_memory(&oracle, n);
        let cd = codimensions(&oracle, n, &cfg.budget)?;
        let root = (cd.delta as f64).powf(1.0 / n as f64);
        let rec = Record::new("delta_trend")
            .field("k", k)
            .field("n", n)
            .field("delta_n", cd.delta)
            .field("delta_root", root)
            .field("precision", GROWTH_PRECISION)
            .columns(&["k", "n", "delta_n", "delta_root", "pass"]);
        report.emit(&rec)?;
        timer.lap(&format!("delta trend n={n}"));
    }
    Ok(())
}
