//! Subcommand handlers. Each returns the JSON body of the output document.

use cmorbit_core::arith::{self, REFERENCE_LAMBDA};
use cmorbit_core::classical::{self, BoundInputs, FundamentalDiscriminant};
use cmorbit_core::cmgroup::{
    cocycle_splitting, dodson_decompose, reflex, CmGaloisGroup, CmType, SignedPermGroup, SignedPermutation,
};
use cmorbit_core::localinv::{self, ActionSpec, FiltrationSpec, QuasiDiscInputs, DEFAULT_ACTION_CAP};
use cmorbit_core::precise::parse_rational;
use cmorbit_core::reciprocity::{self, Family};
use cmorbit_core::InvariantFactors;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{
    BoundArgs, ClassicalCommand, CmCommand, CohomologyCommand, Command, FamilyArgs, QuasidiscArgs, ReciprocityCommand,
};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::inputs::{read_json, GroupSpec};

type Out = Result<Value, CliError>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("output types serialize")
}

fn factors_json(f: &InvariantFactors) -> Value {
    json!({
        "invariant_factors": f.factors().iter().map(big_json).collect::<Vec<_>>(),
        "torsion_order": big_json(&f.torsion_order()),
        "description": f.to_string(),
    })
}

fn big_json(x: &BigInt) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))
}

pub fn run(command: &Command, cfg: &RunConfig) -> Out {
    match command {
        Command::Lambda { max_s } => lambda(*max_s, cfg),
        Command::Weight { n } => Ok(to_value(&arith::weight(*n)?)),
        Command::Psi { s } => Ok(json!({ "s": s, "psi": arith::psi(*s)? })),
        Command::Cm(c) => cm(c, cfg),
        Command::Reciprocity(r) => reciprocity_cmd(r, cfg),
        Command::Cohomology(c) => cohomology(c, cfg),
        Command::Conductor { input, tame } => conductor(&read_json(input)?, *tame),
        Command::Quasidisc(q) => quasidisc(q, cfg),
        Command::Classical(c) => classical_cmd(c, cfg),
        Command::Bound(b) => bound(b, cfg),
    }
}

const LAMBDA_NOTE: &str = "lambda(s) is evaluated from its defining minimum over 2 <= n <= psi(s); \
for s = 6, 7 this gives 6/29 (psi(6) = 30, attained at n = 30), while hand tables in circulation list 1/5";

fn lambda(max_s: u32, cfg: &RunConfig) -> Out {
    if max_s == 0 {
        return Err(cmorbit_core::Error::Domain("--max-s must be at least 1".into()).into());
    }
    let table = cfg.alpha_table()?;
    let mut rows = Vec::new();
    for s in 1..=max_s {
        let l = arith::lambda_const(s)?;
        let c = arith::c_const(s, &table)?;
        let reference =
            REFERENCE_LAMBDA.iter().find(|r| r.0 == s).map(|&(_, n, d)| format!("{}", num_rational::Ratio::new(n, d)));
        rows.push(json!({
            "s": s,
            "psi": l.psi,
            "lambda": l.ratio().to_string(),
            "argmin": l.argmin,
            "reference_lambda": reference,
            "matches_reference": reference.as_deref().map(|r| r == l.ratio().to_string()),
            "alpha": to_value(&c)["alpha"].clone(),
            "c": { "primes": c.primes, "exponent": to_value(&c)["exponent"].clone(), "log10": c.log10() },
        }));
    }
    let mut notes = Vec::new();
    if max_s >= 6 {
        notes.push(LAMBDA_NOTE);
    }
    Ok(json!({ "rows": rows, "notes": notes, "alpha_overrides": to_value(table.overrides()) }))
}

fn closure(spec: &GroupSpec, cfg: &RunConfig) -> Result<SignedPermGroup, CliError> {
    Ok(SignedPermGroup::closure(&spec.generators, spec.g, cfg.closure_cap)?)
}

fn cm_group(spec: &GroupSpec, cfg: &RunConfig) -> Result<(CmGaloisGroup, CmType), CliError> {
    let group = CmGaloisGroup::new(closure(spec, cfg)?)?;
    Ok((group, spec.cm_type()?))
}

/// A small generating set: elements not yet in the span, in canonical order.
fn generators_of(group: &SignedPermGroup) -> Vec<SignedPermutation> {
    let g = group.g();
    let mut gens: Vec<SignedPermutation> = Vec::new();
    let mut span = SignedPermGroup::closure(&[], g, usize::MAX).expect("trivial group");
    for x in group.elements().iter().rev() {
        if !span.contains(x) {
            gens.push(x.clone());
            span = SignedPermGroup::closure(&gens, g, usize::MAX).expect("subgroup of a finite group");
        }
    }
    gens.sort();
    gens
}

fn datum_json(group: &CmGaloisGroup, cm_type: &CmType) -> Out {
    let report = reciprocity::analyze_datum(group, cm_type)?;
    let mut v = to_value(&report);
    v["generators"] = to_value(&generators_of(group));
    v["cm_type"] = to_value(cm_type);
    Ok(v)
}

fn cm(c: &CmCommand, cfg: &RunConfig) -> Out {
    match c {
        CmCommand::Validate { input } => {
            let spec: GroupSpec = read_json(input)?;
            let group = closure(&spec, cfg)?;
            let mut v = to_value(&group.validate_cm());
            v["g"] = json!(spec.g);
            v["order"] = json!(group.order());
            Ok(v)
        }
        CmCommand::Analyze { input } => {
            let spec: GroupSpec = read_json(input)?;
            let (group, cm_type) = cm_group(&spec, cfg)?;
            let mut v = datum_json(&group, &cm_type)?;
            v["extension"] = to_value(&dodson_decompose(&group)?);
            let refl = reflex(&group, &cm_type)?;
            v["reflex_subgroup_order"] = json!(refl.reflex_subgroup.len());
            let witness = cocycle_splitting(&group)?;
            v["cocycle_trivial"] = json!(witness.is_some());
            v["splitting_witness"] = to_value(&witness.map(|b| b.to_signs(spec.g)));
            Ok(v)
        }
        CmCommand::Enumerate { g } => {
            let data = reciprocity::enumerate_cm_data(*g)?;
            let rows: Vec<Value> =
                data.par_iter().map(|d| datum_json(&d.group, &d.cm_type)).collect::<Result<_, _>>()?;
            let disconnected = rows.iter().filter(|r| r["connected"] == json!(false)).count();
            Ok(json!({ "g": g, "count": rows.len(), "disconnected": disconnected, "data": rows }))
        }
    }
}

fn family_of(args: &FamilyArgs) -> Family {
    if let Some(g) = args.full_cg {
        Family::FullCg { g }
    } else if let Some(p) = args.cyclic_2p {
        Family::Cyclic2p { p }
    } else {
        Family::KleinG4
    }
}

fn reciprocity_cmd(r: &ReciprocityCommand, cfg: &RunConfig) -> Out {
    let (group, cm_type, family) = match r {
        ReciprocityCommand::Family(args) => {
            let fam = family_of(args);
            let (g, t) = reciprocity::make_family(fam)?;
            (g, t, Some(fam))
        }
        ReciprocityCommand::Kernel { input } => {
            let (g, t) = cm_group(&read_json(input)?, cfg)?;
            (g, t, None)
        }
    };
    let mut v = datum_json(&group, &cm_type)?;
    v["lattice"] = to_value(&reciprocity::reciprocity_vectors(&group, &cm_type)?);
    if let Some(f) = family {
        v["family"] = json!(f.to_string());
    }
    Ok(v)
}

fn cohomology(c: &CohomologyCommand, cfg: &RunConfig) -> Out {
    let (input, degree, cyclic) = match c {
        CohomologyCommand::H1 { input, cyclic } => (input, 1, *cyclic),
        CohomologyCommand::H2 { input } => (input, 2, false),
    };
    let spec: ActionSpec = read_json(input)?;
    let action = spec.build(DEFAULT_ACTION_CAP)?;
    let fixed = localinv::invariant_rank(action.dim(), action.elements());
    let mut v =
        json!({ "degree": degree, "dim": action.dim(), "group_order": action.order(), "invariant_rank": fixed });
    let result = if cyclic {
        let gens = spec.matrices()?;
        if gens.len() != 1 {
            return Err(cmorbit_core::Error::Parameter("--cyclic expects exactly one generator".into()).into());
        }
        v["method"] = json!("cyclic");
        let h = localinv::h1_cyclic(&gens[0])?;
        if fixed == 0 {
            v["component_group_order"] = big_json(&localinv::component_group_order(&gens[0])?);
        }
        h
    } else if degree == 1 {
        v["method"] = json!("cochains");
        localinv::h1_general(&action)?
    } else {
        v["method"] = json!("cochains");
        localinv::h2_general_with_cap(&action, cfg.h2_order_cap)?
    };
    merge(&mut v, factors_json(&result));
    Ok(v)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn conductor(spec: &FiltrationSpec, tame: bool) -> Out {
    let filtration = spec.build(DEFAULT_ACTION_CAP)?;
    let mut v = to_value(&localinv::artin_conductor(&filtration));
    if tame {
        let gens = spec.levels.first().map(Vec::len).unwrap_or(0);
        if gens != 1 {
            return Err(cmorbit_core::Error::Parameter("--tame needs a single generator at level 0".into()).into());
        }
        let sigma = ActionSpec { dim: spec.dim, generators: spec.levels[0].clone() }.matrices()?.remove(0);
        let e = localinv::matrix_order(&sigma)?;
        v["tame"] = to_value(&localinv::tame_conductor_check(&sigma, e)?);
    }
    Ok(v)
}

fn quasidisc(q: &QuasidiscArgs, cfg: &RunConfig) -> Out {
    let inputs = QuasiDiscInputs { dim: q.dim, a_t: q.a_t, a: q.a, b: q.b, c: q.c, component_orders: q.phi.clone() };
    let mut v = to_value(&localinv::quasi_discriminant(&inputs, cfg.precision_digits)?);
    v["inputs"] = to_value(&inputs);
    Ok(v)
}

fn classical_cmd(c: &ClassicalCommand, cfg: &RunConfig) -> Out {
    let digits = cfg.precision_digits;
    match c {
        ClassicalCommand::H { d } => {
            let fd = FundamentalDiscriminant::new(*d)?;
            Ok(json!({
                "discriminant": d,
                "w": fd.units(),
                "l1": to_value(&classical::dirichlet_l1(fd, digits)?),
                "h_dirichlet": classical::class_number_iq(fd, digits)?,
                "h_forms": classical::reduced_form_count(fd),
            }))
        }
        ClassicalCommand::Shyr { d } => {
            Ok(to_value(&classical::shyr_consistency(FundamentalDiscriminant::new(*d)?, digits)?))
        }
    }
}

fn integer(text: &str, name: &str) -> Result<BigInt, CliError> {
    text.trim().parse().map_err(|_| CliError::Usage(format!("--{name} expects an integer, got {text:?}")))
}

fn bound(b: &BoundArgs, cfg: &RunConfig) -> Out {
    let inputs = BoundInputs {
        d: b.d,
        d_l: integer(&b.d_l, "DL")?,
        eps: parse_rational(&b.eps)?,
        i_t: b.i_t,
        index_ratio: integer(&b.index, "index")?,
        b: parse_rational(&b.b)?,
        c: parse_rational(&b.c)?,
    };
    let mut v = to_value(&classical::orbit_bound(&inputs, cfg.precision_digits)?);
    v["note"] = json!("conditional on the user-supplied constants B and c");
    Ok(v)
}
