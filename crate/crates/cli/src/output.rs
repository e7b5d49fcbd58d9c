//! Text and JSON renderings for the dump commands.

use std::fmt::Write;

use serde_json::{json, Value};

use lambdap::combin::SubsetMask;
use lambdap::lambda::{basis_to_string, Lambda, Op, Tensor};
use lambdap::rmatrix::{ChannelKind, RhoChannels};
use lambdap::{LaurentPoly, Result};

/// `c x` with the coefficient omitted when it is 1 and bracketed when it
/// has several terms.
fn scaled(c: &LaurentPoly, x: &str) -> String {
    if c.is_one() {
        x.to_string()
    } else if c == &-LaurentPoly::one() {
        format!("-{x}")
    } else if c.len() == 1 {
        format!("{c} {x}")
    } else {
        format!("({c}) {x}")
    }
}

fn sum_text(terms: impl IntoIterator<Item = String>) -> String {
    let terms: Vec<String> = terms.into_iter().collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn operator_text(op: &Op) -> String {
    let mut out = String::new();
    for (input, image) in op.columns() {
        let rhs = sum_text(image.iter().map(|(b, c)| scaled(c, &basis_to_string(b))));
        writeln!(out, "{} -> {rhs}", basis_to_string(input)).expect("write to string");
    }
    out
}

struct Flat(Vec<SubsetMask>);

impl Flat {
    fn new(lambda: &Lambda) -> Self {
        Self(lambda.order().graded_subsets())
    }

    fn index(&self, s: SubsetMask) -> usize {
        self.0
            .iter()
            .position(|&x| x == s)
            .expect("subset in basis")
    }

    /// Terms of a pair tensor keyed by flat indices, in flat order.
    fn terms<'a>(&self, t: &'a Tensor<LaurentPoly>) -> Vec<((usize, usize), &'a LaurentPoly)> {
        let mut terms: Vec<_> = t
            .iter()
            .map(|(b, c)| ((self.index(b[0]), self.index(b[1])), c))
            .collect();
        terms.sort_by_key(|(k, _)| *k);
        terms
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize, [SubsetMask; 2])> + '_ {
        let n = self.0.len();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j, [self.0[i], self.0[j]])))
    }
}

fn pair_name(i: usize, j: usize) -> String {
    format!("f_{{{i},{j}}}")
}

fn pair_text(flat: &Flat, t: &Tensor<LaurentPoly>) -> String {
    sum_text(
        flat.terms(t)
            .into_iter()
            .map(|((k, l), c)| scaled(c, &pair_name(k, l))),
    )
}

pub fn rmatrix_json(lambda: &Lambda, rho: &Op) -> Value {
    let flat = Flat::new(lambda);
    let entries: Vec<Value> = flat
        .pairs()
        .map(|(i, j, b)| {
            let out: Vec<Value> = flat
                .terms(&rho.apply_basis(&b))
                .into_iter()
                .map(|((k, l), c)| json!({ "basis": [k, l], "coeff": c.to_json() }))
                .collect();
            json!({ "in": [i, j], "out": out })
        })
        .collect();
    json!({ "dim": lambda.dim(), "flat_basis": flat.0, "entries": entries })
}

pub fn rmatrix_text(lambda: &Lambda, rho: &Op) -> String {
    let flat = Flat::new(lambda);
    let mut out = String::new();
    let names: Vec<String> = flat
        .0
        .iter()
        .enumerate()
        .map(|(i, s)| format!("f_{i} = f{s}"))
        .collect();
    writeln!(out, "# {}", names.join(", ")).expect("write to string");
    for (i, j, b) in flat.pairs() {
        writeln!(
            out,
            "{} -> {}",
            pair_name(i, j),
            pair_text(&flat, &rho.apply_basis(&b))
        )
        .expect("write to string");
    }
    out
}

pub fn channels_text(report: &RhoChannels) -> Result<String> {
    let flat = Flat(report.flat.clone());
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "# exponents m").expect("write to string");
    for row in report.exponent_matrix()? {
        let cells: Vec<String> = row.iter().map(i32::to_string).collect();
        writeln!(w, "{}", cells.join(" ")).expect("write to string");
    }
    writeln!(w, "# reflection coefficients").expect("write to string");
    for row in report.reflection_matrix() {
        let cells: Vec<String> = row.iter().map(LaurentPoly::to_string).collect();
        writeln!(w, "{}", cells.join(" | ")).expect("write to string");
    }
    for (label, kind) in [
        ("decay", ChannelKind::Decay),
        ("fusion", ChannelKind::Fusion),
        ("exchange", ChannelKind::Exchange),
    ] {
        writeln!(w, "# {label}").expect("write to string");
        for (i, j, _) in flat.pairs() {
            let x = report.action(&[kind], i, j);
            if !x.is_zero() {
                writeln!(w, "{} -> {}", pair_name(i, j), pair_text(&flat, &x))
                    .expect("write to string");
            }
        }
    }
    Ok(out)
}
