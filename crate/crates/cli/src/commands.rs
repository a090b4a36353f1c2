//! Report builders for the individual subcommands.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use smithlat::exactla::{snf as smith, FpMatrix, IntMatrix};
use smithlat::fixedlocus::{self, ActionParams, Mode};
use smithlat::fpg::{self, JordanType};
use smithlat::hilb2::Hilb2Model;
use smithlat::lattice::{self, GramLattice};
use num_bigint::BigInt;
use smithlat::report::{strings, Report};

/// Largest dimension sent through an explicit-matrix oracle.
const ORACLE_DIM: u64 = 300;
/// Largest rank for which short vectors are also found by box scan.
const BOX_RANK: usize = 4;

/// Values of the fixed-locus count printed for specific examples.
const KNOWN_H_STAR: [((u64, u64, u64), i64); 2] = [((3, 6, 6), 27), ((11, 2, 2), 5)];

/// Reads `{"rows", "cols", "entries"}` or a bare array of rows.
pub fn read_matrix(path: &Path) -> Result<IntMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    let value = match value {
        Value::Array(rows) => {
            let cols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
            json!({ "rows": rows.len(), "cols": cols, "entries": rows })
        }
        other => other,
    };
    serde_json::from_value(value).with_context(|| format!("{} is not an integer matrix", path.display()))
}

fn matrix_json(m: &IntMatrix) -> Value {
    serde_json::to_value(m).expect("matrices serialise")
}

pub fn snf(path: &Path, transforms: bool) -> Result<Report> {
    let a = read_matrix(path)?;
    let mut r = Report::new("snf");
    r.input("file", path.display()).input("rows", a.rows()).input("cols", a.cols());
    let form = smith(&a);
    r.value_json("invariant_factors", strings(&form.invariant_factors));
    r.value("rank", form.rank());
    r.value_json("cokernel_torsion", strings(form.nontrivial_factors()));
    r.value("cokernel_free_rank", a.rows() - form.rank());
    if transforms {
        r.value_json("left", matrix_json(&form.left));
        r.value_json("right", matrix_json(&form.right));
    }
    let ok = form.certifies(&a);
    r.check("certificate", "left · A · right = D with unimodular transforms", true, ok, ok);
    Ok(r)
}

fn parse_vector(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|x| x.trim().parse::<BigInt>().with_context(|| format!("not an integer: {x:?}")))
        .collect()
}

pub fn lattice(
    name: Option<&str>,
    input: Option<&Path>,
    p: Option<u64>,
    short: Option<i64>,
    complement: Option<&str>,
) -> Result<Report> {
    let mut r = Report::new("lattice");
    let l = match (name, input) {
        (Some(n), _) => {
            r.input("name", n);
            lattice::named(n)?
        }
        (None, Some(path)) => {
            r.input("file", path.display());
            GramLattice::new(read_matrix(path)?)?
        }
        (None, None) => bail!("need --name or --in"),
    };
    let group = l.disc_group();
    r.value("rank", l.rank())
        .value("det", l.det())
        .value("even", l.is_even())
        .value("unimodular", l.is_unimodular())
        .value("positive_definite", l.is_positive_definite());
    r.value_json("disc_group", strings(group.invariant_factors()));
    r.value_json(
        "disc_group_primary",
        Value::Array(
            group
                .elementary_divisors()
                .iter()
                .map(|(q, e)| Value::String(format!("{q}^{e}")))
                .collect(),
        ),
    );
    r.target("disc_group_order", "|A_L| = |det|", l.disc(), group.order());
    if l.is_even() {
        let gens = l.disc_form()?;
        let listing: Vec<Value> = gens
            .iter()
            .map(|g| json!({ "order": g.order.to_string(), "q": g.q.to_string(), "lift": strings(&g.lift) }))
            .collect();
        r.value_json("disc_form", Value::Array(listing));
        if let Ok(counts) = l.disc_form_value_counts() {
            let counts: serde_json::Map<String, Value> = counts
                .into_iter()
                .map(|(q, n)| (q.to_string(), Value::String(n.to_string())))
                .collect();
            r.value_json("disc_form_value_counts", Value::Object(counts));
        }
    }
    if let Some(p) = p {
        r.input("p", p);
        let (yes, a) = l.is_p_elementary(p);
        r.value("p_elementary", yes).value("p_elementary_length", a);
    }
    if let Some(n) = short {
        r.input("norm", n);
        let norm = BigInt::from(n);
        let found = l.short_vectors(&norm)?;
        r.value("short_vector_pairs", found.len());
        r.value("short_vector_count", 2 * found.len());
        r.value_json("short_vectors", Value::Array(found.iter().map(strings).collect()));
        if l.rank() <= BOX_RANK {
            let slow = l.short_vectors_bruteforce(&norm)?;
            r.check("short_vectors_oracle", "agrees with box enumeration", slow.len(), found.len(), slow == found);
        }
    }
    if let Some(v) = complement {
        let v = parse_vector(v)?;
        r.input_json("vector", strings(&v));
        let t = l.orth_complement(&v)?;
        let basis = l.orth_complement_basis(&v)?;
        r.value("complement_rank", t.rank())
            .value("complement_det", t.det())
            .value("vector_norm", l.norm(&v));
        r.value_json("complement_disc_group", strings(t.disc_group().invariant_factors()));
        r.value_json("complement_basis", matrix_json(&basis));
    }
    Ok(r)
}

fn parse_counts(p: u64, s: &str) -> Result<JordanType> {
    let mut t = JordanType::new(p)?;
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (q, n) = item
            .split_once(':')
            .with_context(|| format!("expected length:count, got {item:?}"))?;
        let q: usize = q.trim().parse().with_context(|| format!("block length {q:?}"))?;
        let n: u64 = n.trim().parse().with_context(|| format!("count {n:?}"))?;
        t.add(q, n)?;
    }
    Ok(t)
}

fn type_json(t: &JordanType) -> Value {
    serde_json::to_value(t).expect("types serialise")
}

/// Closed form when the input is supported, oracle otherwise; checks the
/// two routes against each other when both are available and small.
fn square_like(
    r: &mut Report,
    key: &str,
    dim: u64,
    closed: smithlat::Result<JordanType>,
    oracle: impl FnOnce() -> smithlat::Result<JordanType>,
) -> Result<()> {
    match closed {
        Ok(c) => {
            r.value(format!("{key}_route"), "closed form");
            if dim <= ORACLE_DIM {
                let o = oracle()?;
                r.check(format!("{key}_oracle"), "closed form agrees with the explicit matrix", true, c == o, c == o);
            }
            r.value_json(key, type_json(&c));
        }
        Err(smithlat::Error::UnsupportedBlocks { .. }) => {
            r.value(format!("{key}_route"), "oracle");
            r.value_json(key, type_json(&oracle()?));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn jordan(p: u64, counts: Option<&str>, matrix: Option<&Path>, tensor: Option<&str>) -> Result<Report> {
    let mut r = Report::new("jordan");
    r.input("p", p);
    let t = match (counts, matrix) {
        (Some(c), _) => {
            r.input("counts", c);
            parse_counts(p, c)?
        }
        (None, Some(path)) => {
            r.input("matrix", path.display());
            let m = FpMatrix::from_int(p, &read_matrix(path)?)?;
            fpg::jordan_type_of(&m)?
        }
        (None, None) => bail!("need --counts or --matrix"),
    };
    r.value_json("type", type_json(&t));
    r.value("dim", t.dim()).value("invariant_dim", t.invariant_dim());
    let (t0, t1) = fpg::tor_dims(&t);
    r.value("tor0", t0).value("tor1", t1);
    let d = t.dim();
    square_like(&mut r, "sym2", d * (d + 1) / 2, fpg::sym2_type(&t), || fpg::sym2_type_oracle(&t))?;
    if let Some(other) = tensor {
        r.input("tensor", other);
        let u = parse_counts(p, other)?;
        square_like(&mut r, "tensor", d * u.dim(), fpg::tensor_type(&t, &u), || {
            fpg::tensor_type_oracle(&t, &u)
        })?;
    }
    Ok(r)
}

pub fn cohomology(p: u64, q: Option<usize>, degrees: usize) -> Result<Report> {
    let mut r = Report::new("cohomology");
    r.input("p", p).input("degrees", degrees);
    let lengths: Vec<usize> = match q {
        Some(q) => vec![q],
        None => (1..=p as usize).collect(),
    };
    for q in lengths {
        let dims = fpg::cohomology_dims(p, q, degrees)?;
        let expected: Vec<usize> = (0..=degrees)
            .map(|i| usize::from(q < p as usize || i == 0))
            .collect();
        r.value_json(format!("q{q}.dims"), strings(&dims));
        r.target(
            format!("q{q}.dims"),
            "H^i(G; N_q) is one-dimensional except H^{i>0}(G; N_p) = 0",
            strings(&expected),
            strings(&dims),
        );
        let explicit = fpg::block_tor_dims(p, q)?;
        let (t0, t1) = fpg::tor_dims(&JordanType::from_counts(p, &[(q, 1)])?);
        r.target(
            format!("q{q}.tor"),
            "Tor over the polynomial part, explicit cochains vs table",
            format!("{t0},{t1}"),
            format!("{},{}", explicit.0, explicit.1),
        );
        let same = fpg::weighted_sum_action(p, q)? == fpg::weighted_sum_closed_form(p, q)?;
        r.check(format!("q{q}.weighted_sum"), "Σ i g^i in powers of g - 1", true, same, same);
    }
    Ok(r)
}

pub fn hilb2_verify() -> Report {
    Hilb2Model::new().verify()
}

pub fn hilb2_cup_table() -> Report {
    let mut r = Report::new("hilb2 dump-cup-table");
    let table = Hilb2Model::new().cup_table();
    r.value("products", table.products.len());
    r.value_json("cup_table", serde_json::to_value(&table).expect("table serialises"));
    r
}

pub fn fixedlocus_eval(p: u64, a: u64, m: u64, mode: Mode, symplectic: bool, rho: Option<u64>) -> Result<Report> {
    let mut r = Report::new("fixedlocus eval");
    r.input("p", p).input("a", a).input("m", m).input("symplectic", symplectic);
    let mut params = ActionParams::new(p, a, m).symplectic(symplectic);
    if let Some(rho) = rho {
        r.input("rho", rho);
        params = params.with_rho(rho);
    }
    let rep = fixedlocus::h_star(&params, mode)?;
    let mode_name = match mode {
        Mode::Exact => "exact",
        Mode::UpperBound => "upper-bound",
    };
    r.input("mode", mode_name);
    r.value("h_star", rep.h_star)
        .value("closed_form", rep.closed_form)
        .value("assembled", rep.assembled)
        .value("a4", rep.degree4.0)
        .value("m4", rep.degree4.1);
    r.value_json("degree2_type", type_json(&rep.jordan.degrees()[0]));
    r.value_json("degree4_type", type_json(&rep.jordan.degrees()[1]));
    r.target("closed_equals_assembled", "one-line formula vs degree-by-degree count", rep.closed_form, rep.assembled);
    if let Some((_, known)) = KNOWN_H_STAR.iter().find(|(k, _)| *k == (p, a, m)) {
        r.target("known_value", format!("worked example (p, a, m) = ({p}, {a}, {m})"), known, rep.h_star);
    }
    Ok(r)
}

pub fn fixedlocus_enumerate(p: u64, target: Option<i64>) -> Result<Report> {
    let mut r = Report::new("fixedlocus enumerate");
    r.input("p", p);
    if let Some(t) = target {
        r.input("target", t);
    }
    let hits = fixedlocus::enumerate_admissible(p, target)?;
    r.value("count", hits.len());
    r.value_json(
        "entries",
        Value::Array(
            hits.iter()
                .map(|e| json!({ "a": e.a.to_string(), "m": e.m.to_string(), "h_star": e.h_star.to_string() }))
                .collect(),
        ),
    );
    Ok(r)
}

pub fn k3(p: u64, a: u64, m: u64, has_fixed_point: bool) -> Result<Report> {
    let mut r = Report::new("k3");
    r.input("p", p).input("a", a).input("m", m).input("fixed_point", has_fixed_point);
    r.value("h_star", fixedlocus::h_star_k3(p, a, m, has_fixed_point)?);
    Ok(r)
}
