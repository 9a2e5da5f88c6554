use std::fmt::Write;

use serde_json::{json, Value};
use wproj_core::cech::pages_for_weights;
use wproj_core::divisors::{class_group, divisor_report, picard_index, stack_comparison};
use wproj_core::fan::Fan;
use wproj_core::sheafcoh::{entry_json, h_dim_variant, monomial_basis, Variant};
use wproj_core::weights::{is_isomorphic, normalize, twist_transport};
use wproj_core::{Result, WeightVector};

use crate::{sweep, weights_from, Command};

/// Echo of the parsed arguments. `--jobs` is left out so that reports do
/// not depend on the degree of parallelism.
pub(crate) fn inputs(cmd: &Command) -> Value {
    match cmd {
        Command::Normalize { weights }
        | Command::Fan { weights }
        | Command::Brauer { weights }
        | Command::ClassGroups { weights } => json!({ "weights": weights }),
        Command::Iso { first, second } => json!({ "first": first, "second": second }),
        Command::Cohomology { weights, degree, ell, basis, stack } => json!({
            "weights": weights,
            "i": degree,
            "ell": ell,
            "basis": basis,
            "variant": variant(*stack).name(),
        }),
        Command::Twist { weights, ell } => json!({ "weights": weights, "ell": ell.to_string() }),
        Command::Sweep { dim, max_weight, .. } => json!({ "dim": dim, "max_weight": max_weight }),
    }
}

fn variant(stack: bool) -> Variant {
    if stack {
        Variant::Stack
    } else {
        Variant::Space
    }
}

pub(crate) fn dispatch(cmd: &Command) -> Result<(Value, String)> {
    match cmd {
        Command::Normalize { weights } => normalize_cmd(&weights_from(weights)?),
        Command::Iso { first, second } => iso_cmd(&weights_from(first)?, &weights_from(second)?),
        Command::Fan { weights } => fan_cmd(&weights_from(weights)?),
        Command::Brauer { weights } => brauer_cmd(&weights_from(weights)?),
        Command::ClassGroups { weights } => class_groups_cmd(&weights_from(weights)?),
        Command::Cohomology { weights, degree, ell, basis, stack } => {
            cohomology_cmd(&weights_from(weights)?, *degree, *ell, *basis, variant(*stack))
        }
        Command::Twist { weights, ell } => {
            let w = weights_from(weights)?;
            let t = twist_transport(&w, ell)?;
            let mut out = String::new();
            writeln!(out, "weights      {w}").unwrap();
            writeln!(out, "ell          {}", t.ell).unwrap();
            writeln!(out, "d            {:?}", t.d).unwrap();
            writeln!(out, "b            {:?}", t.b).unwrap();
            writeln!(out, "ell'         {}", t.ell_prime).unwrap();
            writeln!(out, "s            {}", t.s).unwrap();
            writeln!(out, "reduced      {} with O({})", t.reduced_weights, t.reduced_twist).unwrap();
            Ok((t.to_json(), out))
        }
        Command::Sweep { dim, max_weight, jobs } => {
            let rep = sweep(*dim, *max_weight, *jobs)?;
            let human = rep.human();
            Ok((rep.to_json(), human))
        }
    }
}

fn normalize_cmd(w: &WeightVector) -> Result<(Value, String)> {
    let rep = normalize(w);
    let mut out = String::new();
    writeln!(out, "input        {}", rep.input).unwrap();
    writeln!(out, "gcd          {} -> {}", rep.input.gcd(), rep.gcd_divided).unwrap();
    for (k, st) in rep.steps.iter().enumerate() {
        writeln!(out, "step {:<7} d={:?} s={} -> {}", k + 1, st.d, st.s, st.output).unwrap();
    }
    writeln!(out, "normal form  {}", rep.normal_form).unwrap();
    writeln!(out, "total s      {}", rep.total_s).unwrap();
    Ok((rep.to_json(), out))
}

fn iso_cmd(a: &WeightVector, b: &WeightVector) -> Result<(Value, String)> {
    let na = normalize(a).normal_form.sorted();
    let nb = normalize(b).normal_form.sorted();
    let iso = is_isomorphic(a, b);
    let out = format!("{a} ~ {na}\n{b} ~ {nb}\nisomorphic   {iso}\n");
    Ok((
        json!({
            "normal_forms": [na.to_json(), nb.to_json()],
            "isomorphic": iso,
        }),
        out,
    ))
}

fn fan_cmd(w: &WeightVector) -> Result<(Value, String)> {
    let fan = Fan::new(w)?;
    fan.validate()?;
    let mut v = fan.to_json();
    v["maximal_cones"] = json!(fan.maximal_cones());
    v["smooth"] = json!(fan.is_smooth());
    let mut out = String::new();
    writeln!(out, "weights      {w}").unwrap();
    writeln!(out, "U").unwrap();
    for r in fan.completion().to_rows() {
        writeln!(out, "  {}", join(&r)).unwrap();
    }
    writeln!(out, "rays").unwrap();
    for i in 0..=fan.dim() {
        writeln!(out, "  v{i} = ({})  m{i} = {}", join(fan.ray(i)), fan.multiplicities()[i]).unwrap();
    }
    writeln!(out, "smooth       {}", fan.is_smooth()).unwrap();
    Ok((v, out))
}

fn brauer_cmd(w: &WeightVector) -> Result<(Value, String)> {
    let pages = pages_for_weights(w)?;
    let br = pages.brauer();
    Ok((json!({ "E2_01": br.to_json() }), format!("E2^{{0,1}}     {br}\n")))
}

fn class_groups_cmd(w: &WeightVector) -> Result<(Value, String)> {
    let v = divisor_report(w)?;
    let fan = Fan::new(w)?;
    let cl = class_group(&fan)?;
    let pic = picard_index(&fan)?;
    let stack = stack_comparison(w)?;
    let mut out = String::new();
    writeln!(out, "Cl           {}", cl.group).unwrap();
    writeln!(out, "ray degrees  {}", join(&cl.ray_degrees)).unwrap();
    writeln!(out, "[Cl : Pic]   {}", pic.index_in_class_group).unwrap();
    writeln!(out, "pullback     x{}", stack.pullback_multiplier).unwrap();
    Ok((v, out))
}

fn cohomology_cmd(w: &WeightVector, i: usize, ell: i64, basis: bool, variant: Variant) -> Result<(Value, String)> {
    let dim = h_dim_variant(w, variant, i, ell)?;
    let b = if basis { Some(monomial_basis(w, i, ell)?) } else { None };
    let mut v = entry_json(i, ell, dim, b.as_ref());
    v["weights"] = w.to_json();
    v["variant"] = json!(variant.name());
    let mut out = format!("h^{i}(O({ell})) on {} {w} = {dim}\n", variant.name());
    if let Some(b) = &b {
        for e in b {
            writeln!(out, "  ({})", join(e)).unwrap();
        }
    }
    Ok((v, out))
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
