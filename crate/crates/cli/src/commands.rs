use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use hecke_lab::rep::{
    character_extends, character_module, character_module_fp, chi_s, enumerate_characters, extensions,
    is_discrete_character, is_supersingular, key_result_search, CharMode, Character, DiscreteEvidence, KeyResult,
    NodeValue, RepError, SupersingularOptions, Verdict,
};
use hecke_lab::{Family, HeckeAlgebra, HeckeElt, HeckeError, RootDataError, RootDatum, WeylError};

use crate::spec::{is_prime, CaseSpec};

#[derive(Debug, Error, Clone)]
pub enum CaseError {
    #[error("{kind}: {message}")]
    Invalid { kind: String, message: String },
    #[error("{kind}: {message}")]
    Internal { kind: String, message: String },
}

impl CaseError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CaseError::Invalid { .. } => 2,
            CaseError::Internal { .. } => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CaseError::Invalid { kind, message } | CaseError::Internal { kind, message } => (kind, message),
        };
        json!({"error": {"kind": kind, "message": message}})
    }

    pub fn invalid(kind: &str, message: impl Into<String>) -> Self {
        CaseError::Invalid { kind: kind.into(), message: message.into() }
    }
}

/// Variant name of an error, looking through the transparent wrappers.
fn variant_name(debug: &str) -> String {
    let mut s = debug;
    while let Some(rest) = s.strip_prefix("Weyl(").or_else(|| s.strip_prefix("Hecke(")) {
        s = rest;
    }
    s.chars().take_while(|c| c.is_alphanumeric()).collect()
}

impl From<RootDataError> for CaseError {
    fn from(e: RootDataError) -> Self {
        CaseError::Invalid { kind: variant_name(&format!("{e:?}")), message: e.to_string() }
    }
}

impl From<RepError> for CaseError {
    fn from(e: RepError) -> Self {
        let kind = variant_name(&format!("{e:?}"));
        let message = e.to_string();
        match e {
            RepError::NotAdjoint | RepError::NegativePowersPresent(_) => CaseError::Invalid { kind, message },
            _ => CaseError::Internal { kind, message },
        }
    }
}

impl From<WeylError> for CaseError {
    fn from(e: WeylError) -> Self {
        RepError::from(e).into()
    }
}

impl From<HeckeError> for CaseError {
    fn from(e: HeckeError) -> Self {
        RepError::from(e).into()
    }
}

pub struct RunOptions {
    pub p: u64,
    pub seed: u64,
    pub exhaustive: bool,
    pub timing: bool,
}

impl RunOptions {
    fn ss(&self) -> SupersingularOptions {
        SupersingularOptions { exhaustive: self.exhaustive }
    }
}

fn prime_for(spec: &CaseSpec, opts: &RunOptions) -> Result<u64, CaseError> {
    let p = spec.p.unwrap_or(opts.p);
    if !is_prime(p) {
        return Err(CaseError::invalid("NotPrime", format!("{p} is not prime")));
    }
    Ok(p)
}

fn group_json(g: &hecke_lab::OmegaGroup) -> Value {
    json!({
        "order": g.order(),
        "type": g.iso_type(),
        "permutations": g.elements.iter().map(|e| e.perm.clone()).collect::<Vec<_>>(),
    })
}

pub fn datum_summary(datum: &RootDatum) -> Result<Value, CaseError> {
    Ok(json!({
        "type": datum.cartan_type().to_string(),
        "rank": datum.rank(),
        "cartan": datum.cartan(),
        "highest_root": datum.highest_root(),
        "coxeter_matrix": datum.coxeter_matrix(),
        "m": datum.num_classes(),
        "classes": datum.conjugacy_classes(),
        "class_decoration": datum.class_decoration(),
        "node_decoration": datum.decoration(),
        "lattice_index": datum.lattice().index(),
        "omega": group_json(datum.aut_group()),
        "decorated_omega": group_json(datum.decorated_aut_group()),
        "diagram_automorphisms": datum.diagram_automorphisms().len(),
        "dominant_generators": datum.dominant_generators()?,
    }))
}

fn class_labels(datum: &RootDatum, chi: &Character) -> Vec<String> {
    datum.conjugacy_classes().iter().map(|c| chi.label(datum, c[0])).collect()
}

pub fn characters_report(datum: &RootDatum, p: u64) -> Result<Value, CaseError> {
    let alg = HeckeAlgebra::new(datum);
    let mut generic = Vec::new();
    for chi in enumerate_characters(datum, CharMode::Generic) {
        character_module(datum, &chi).check_relations(datum)?;
        let disc = is_discrete_character(&alg, &chi)?;
        generic.push(json!({
            "values": class_labels(datum, &chi),
            "special": chi.is_special(),
            "trivial": chi.is_trivial(),
            "extends": character_extends(datum, &chi),
            "extensions": extensions(datum, &chi).len(),
            "discrete": disc.discrete,
            "exponents": disc.table,
        }));
    }
    let mut modp = Vec::new();
    for chi in enumerate_characters(datum, CharMode::ModP(p)) {
        character_module_fp(datum, &chi, p).check_relations(datum)?;
        modp.push((0..datum.num_nodes()).map(|s| chi.label(datum, s)).collect::<Vec<_>>());
    }
    let extending = generic.iter().filter(|c| c["extends"] == json!(true)).count();
    Ok(json!({
        "generic": {"count": generic.len(), "extending": extending, "characters": generic},
        "mod_p": {"p": p, "count": modp.len(), "characters": modp},
    }))
}

fn verdict_name(v: Verdict) -> String {
    format!("{v:?}")
}

fn certificate_json(datum: &RootDatum, k: &KeyResult, p: u64) -> Value {
    let mut out = json!({
        "case": verdict_name(k.verdict),
        "r": k.verdict.dimension_class(),
    });
    if let Some(m) = &k.module {
        out["dimension"] = json!(m.dim());
        out["relations"] = json!("pass");
    }
    if let Some(ss) = &k.supersingular {
        out["supersingular_mod_p"] = json!({
            "p": p,
            "supersingular": ss.supersingular,
            "sampled": ss.sampled,
            "orbits": ss.orbits,
        });
    }
    if let Some(d) = &k.discrete {
        out["discrete"] = match d {
            DiscreteEvidence::CitedLusztig => json!({"method": "cited-lusztig", "recomputed": false}),
            other => serde_json::to_value(other).expect("serializable evidence"),
        };
    }
    if let Some(chi) = &k.character {
        out["character"] = json!(class_labels(datum, chi));
        if chi.is_extended() {
            out["omega_values"] = json!(chi.omega);
        }
    }
    if !k.reduction.is_empty() {
        out["reduction"] = json!(k
            .reduction
            .iter()
            .map(|c| (0..datum.num_nodes()).map(|s| c.label(datum, s)).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    out
}

pub fn classify(datum: &RootDatum, p: u64, opts: &RunOptions) -> Result<(KeyResult, Value), CaseError> {
    let alg = HeckeAlgebra::new(datum);
    let k = key_result_search(&alg, p, opts.ss())?;
    let cert = certificate_json(datum, &k, p);
    Ok((k, cert))
}

fn check(name: &str, pass: bool, detail: Value) -> Value {
    json!({"name": name, "pass": pass, "detail": detail})
}

/// Characters that fail to extend, as predicted by the exception list:
/// `A_1` with equal parameters and `chi_1 != chi_2`, `C_l` with `d_2 = d_3` and `chi_2 != chi_3`.
fn predicted_extends(datum: &RootDatum, chi: &Character) -> bool {
    let ty = datum.cartan_type();
    let cv = chi.class_values(datum);
    let cd = datum.class_decoration();
    match ty.family {
        Family::A if ty.rank == 1 && cd[0] == cd[1] => cv[0] == cv[1],
        Family::C if cd[1] == cd[2] => cv[1] == cv[2],
        _ => true,
    }
}

/// Seeded spot checks of the algebra kernel on random words.
fn kernel_sample(datum: &RootDatum, seed: u64, samples: usize) -> Value {
    let alg = HeckeAlgebra::new(datum);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = datum.psi();
    let random_elt = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..=4);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..datum.num_nodes())).collect();
        let u = psi.elements[rng.gen_range(0..psi.order())].elt;
        u.compose(&datum.element_from_word(&word))
    };
    let mut failures = 0;
    for _ in 0..samples {
        let a = random_elt(&mut rng);
        let b = random_elt(&mut rng);
        let lhs = alg.mul_basis(&HeckeElt::basis(a), &b);
        if datum.length(&a) + datum.length(&b) == datum.length(&a.compose(&b)) && lhs != HeckeElt::basis(a.compose(&b)) {
            failures += 1;
        }
        let inv = alg.t_mul(&HeckeElt::basis(a), &alg.t_star(&a.inv())).expect("same datum");
        if inv != HeckeElt::term(datum.identity(), alg.q_w(&a)) {
            failures += 1;
        }
    }
    json!({"seed": seed, "samples": samples, "failures": failures})
}

/// All checks of one case. Returns the case report and whether every check passed.
pub fn verify_case(spec: &CaseSpec, opts: &RunOptions) -> Result<(Value, bool), CaseError> {
    let start = Instant::now();
    let p = prime_for(spec, opts)?;
    let datum = spec.build()?;
    let alg = HeckeAlgebra::new(&datum);
    let expect = spec.expect.clone().unwrap_or_default();
    let mut checks = Vec::new();

    let m = datum.num_classes();
    if let Some(em) = expect.m {
        checks.push(check("classes", em == m, json!({"expected": em, "found": m})));
    }
    let omega = datum.aut_group().iso_type();
    if let Some(eo) = &expect.omega {
        checks.push(check("omega", *eo == omega, json!({"expected": eo, "found": omega})));
    }
    checks.push(check("omega_axioms", datum.aut_group().check_axioms(), json!(null)));

    let generic = enumerate_characters(&datum, CharMode::Generic);
    let generic_ok = generic.iter().all(|c| character_module(&datum, c).check_relations(&datum).is_ok());
    checks.push(check(
        "character_count_generic",
        generic.len() == 1 << m && generic_ok,
        json!({"expected": 1u64 << m, "found": generic.len()}),
    ));
    let modp = enumerate_characters(&datum, CharMode::ModP(p));
    let modp_ok = modp.iter().all(|c| character_module_fp(&datum, c, p).check_relations(&datum).is_ok());
    let n = datum.num_nodes();
    checks.push(check(
        "character_count_mod_p",
        modp.len() == 1 << n && modp_ok,
        json!({"expected": 1u64 << n, "found": modp.len()}),
    ));

    let mismatched: Vec<Vec<String>> = generic
        .iter()
        .filter(|c| character_extends(&datum, c) != predicted_extends(&datum, c))
        .map(|c| class_labels(&datum, c))
        .collect();
    checks.push(check("extension_table", mismatched.is_empty(), json!({"mismatched": mismatched})));

    let special = &generic[0];
    let trivial = generic.last().expect("at least two characters");
    let special_discrete = is_discrete_character(&alg, special)?.discrete;
    let trivial_discrete = is_discrete_character(&alg, trivial)?.discrete;
    let ss_of = |values: NodeValue| -> Result<bool, CaseError> {
        let chi = Character { mode: CharMode::ModP(p), values: vec![values; n], omega: vec![] };
        let ext = extensions(&datum, &chi).remove(0);
        Ok(is_supersingular(&alg, &character_module_fp(&datum, &ext, p), opts.ss())?.supersingular)
    };
    let special_ss = ss_of(NodeValue::MinusOne)?;
    let trivial_ss = ss_of(NodeValue::Param)?;
    checks.push(check(
        "special_trivial",
        special_discrete && !trivial_discrete && !special_ss && !trivial_ss,
        json!({
            "special_discrete": special_discrete,
            "trivial_discrete": trivial_discrete,
            "special_supersingular": special_ss,
            "trivial_supersingular": trivial_ss,
        }),
    ));

    if datum.is_adjoint() {
        let (k, cert) = classify(&datum, p, opts)?;
        let verdict = verdict_name(k.verdict);
        if let Some(ev) = &expect.verdict {
            checks.push(check("verdict", *ev == verdict, json!({"expected": ev, "found": verdict})));
        }
        if let Some(er) = expect.r {
            let found = k.verdict.dimension_class();
            checks.push(check("r", Some(er) == found, json!({"expected": er, "found": found})));
        }
        if let Some(ss) = &k.supersingular {
            checks.push(check("supersingular_reduction", ss.supersingular, json!(null)));
        }
        if k.verdict == Verdict::ReflectionTwist {
            let expected: BTreeSet<Character> = (0..n).map(|s| chi_s(&datum, s, p)).collect();
            let found: BTreeSet<Character> = k.reduction.iter().cloned().collect();
            let each_ss = (0..n).all(|s| {
                let m = character_module_fp(&datum, &chi_s(&datum, s, p), p);
                is_supersingular(&alg, &m, opts.ss()).map(|c| c.supersingular).unwrap_or(false)
            });
            checks.push(check(
                "reflection_reduction",
                k.reduction.len() == n && found == expected && each_ss,
                json!({"characters": k.reduction.len(), "distinct": found.len(), "each_supersingular": each_ss}),
            ));
        }
        checks.push(json!({"name": "certificate", "pass": true, "detail": cert}));
    }

    if datum.rank() <= 3 {
        let sample = kernel_sample(&datum, opts.seed, 25);
        let ok = sample["failures"] == json!(0);
        checks.push(check("kernel_sample", ok, sample));
    }

    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    let mut out = json!({
        "case": spec,
        "label": spec.label(),
        "status": if pass { "pass" } else { "fail" },
        "checks": checks,
    });
    if opts.timing {
        out["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok((out, pass))
}

pub fn build_case(spec: &CaseSpec, _opts: &RunOptions) -> Result<Value, CaseError> {
    let datum = spec.build()?;
    Ok(json!({"case": spec, "datum": datum_summary(&datum)?}))
}

pub fn characters_case(spec: &CaseSpec, opts: &RunOptions) -> Result<Value, CaseError> {
    let p = prime_for(spec, opts)?;
    let datum = spec.build()?;
    Ok(json!({"case": spec, "characters": characters_report(&datum, p)?}))
}

pub fn classify_case(spec: &CaseSpec, opts: &RunOptions) -> Result<Value, CaseError> {
    let p = prime_for(spec, opts)?;
    let datum = spec.build()?;
    let (k, cert) = classify(&datum, p, opts)?;
    Ok(json!({"case": spec, "verdict": verdict_name(k.verdict), "certificate": cert}))
}

