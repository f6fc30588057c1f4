use crate::parse::{parse_decomposition_inner, parse_mu_inner, parse_number, parse_values};
use crate::{Command, Emitted, Failure, Format, JobSpec};
use serde_json::{json, Value};
use std::fmt::Write as _;
use unram::averaging::{geometric_lemma_red_triv, mu_ordinary_check, red_b_phi, refined_averaging_check};
use unram::characters::{
    condition_ladder, gln_principal_series_irreducible, mu_regularity, orbit_test_value, MuMode, MuWitness,
    ToralParameter, UnramifiedCharacter,
};
use unram::galois::{CoinvariantClass, CoinvariantLattice, GaloisTwist};
use unram::kottwitz::{bgmu_gln, enumerate_bgmu_un, is_split_gl};
use unram::linalg::Q;
use unram::root_datum::{build_root_datum, weyl_group_order, GroupSpec, Lattice, TypeTag};
use unram::tilting;
use unram::weights::{classify_minuscule, coinvariant_weight_table, freudenthal, weyl_dimension, MinusculeClass};

pub(crate) fn dispatch(job: &JobSpec) -> Result<Emitted, Failure> {
    for key in job.parameters.keys() {
        if !job.command.keys().contains(&key.as_str()) {
            return Err(Failure(format!("unknown parameter `{key}` for `{}`", job.command.name())));
        }
    }
    let cap = match job.parameters.get("cap") {
        Some(s) => parse_number("cap", s)?,
        None => unram::default_cap(),
    };
    match job.command {
        Command::Describe => describe(job, cap),
        Command::Bgmu => bgmu(job),
        Command::Weights => weights(job, cap),
        Command::CheckCharacter => check_character(job, cap),
        Command::Tilting => tilting_cmd(job),
        Command::TiltingTable => tilting_table(job),
        Command::Averaging => averaging(job, cap),
    }
}

fn require<'a>(job: &'a JobSpec, key: &str) -> Result<&'a str, Failure> {
    job.parameters
        .get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| Failure(format!("`{}` needs --{key}", job.command.name())))
}

fn lattice(job: &JobSpec) -> Result<CoinvariantLattice, Failure> {
    let spec = GroupSpec::parse(&job.group)?;
    let rd = build_root_datum(&spec)?;
    let tw = match (&job.twist, spec.twist) {
        (Some(t), _) => GaloisTwist::parse(&rd, t)?,
        (None, Some(k)) => GaloisTwist::named(&rd, k)?,
        (None, None) => GaloisTwist::trivial(&rd),
    };
    Ok(CoinvariantLattice::new(rd, tw)?)
}

fn emit(job: &JobSpec, doc: Value, tsv: String) -> Emitted {
    let stdout = match job.output {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Format::Tsv => tsv,
    };
    Emitted { check_failed: false, stdout, stderr: String::new() }
}

fn header(job: &JobSpec, lat: Option<&CoinvariantLattice>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(format!("unram.{}.v1", job.command.name())));
    m.insert("group".into(), json!(job.group));
    if let Some(lat) = lat {
        m.insert("twist_order".into(), json!(lat.twist.order));
    }
    m
}

fn q_str(x: &Q) -> String {
    x.to_string()
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(q_str).collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn class_json(lat: &CoinvariantLattice, c: &CoinvariantClass) -> Value {
    json!({ "class": c.to_string(), "representative": lat.lift(c) })
}

fn describe(job: &JobSpec, cap: usize) -> Result<Emitted, Failure> {
    let lat = lattice(job)?;
    let rd = &lat.rd;
    let lattice_kind = match rd.spec.lattice {
        Lattice::Adjoint => "adjoint",
        Lattice::SimplyConnected => "simply-connected",
        Lattice::General => "general-linear",
    };
    let rel = lat.relative_weyl_elements(cap)?.len();
    let mut doc = header(job, Some(&lat));
    let fields = json!({
        "type": rd.tag().to_string(),
        "lattice": lattice_kind,
        "rank": rd.rank,
        "semisimple_rank": rd.semisimple_rank(),
        "central_rank": rd.spec.central_rank,
        "cartan_matrix": rd.cartan,
        "positive_roots": rd.positive_roots.len(),
        "weyl_group_order": weyl_group_order(&rd.tag()) as u64,
        "node_permutation": one_based(&lat.twist.perm),
        "coinvariants": lat.describe(),
        "coinvariants_free_rank": lat.free_rank(),
        "coinvariants_torsion": lat.torsion(),
        "pi1_coinvariants": lat.describe_pi1(),
        "invariant_basis": lat.invariant_basis(),
        "relative_orbits": lat.orbits.iter().map(|o| one_based(o)).collect::<Vec<_>>(),
        "relative_weyl_group_order": rel,
        "coroot_orbit_sizes": lat.coroot_orbits.iter().map(|o| o.len()).collect::<Vec<_>>(),
        "warnings": rd.warnings,
    });
    doc.extend(fields.as_object().unwrap().clone());
    let mut tsv = String::from("key\tvalue\n");
    for (k, v) in &doc {
        let v = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let _ = writeln!(tsv, "{k}\t{v}");
    }
    Ok(emit(job, Value::Object(doc), tsv))
}

fn bgmu(job: &JobSpec) -> Result<Emitted, Failure> {
    let lat = lattice(job)?;
    let mu = parse_mu_inner(&lat.rd, require(job, "mu")?)?;
    let points = enumerate_bgmu_un(&lat, &mu)?;
    let mut rows = Vec::new();
    let mut tsv = String::new();
    let polygons = if is_split_gl(&lat) {
        let polys = bgmu_gln(lat.rank(), &mu)?;
        tsv.push_str("# polygons\nslopes\tunramified\n");
        for p in &polys {
            let unr = p.iter().all(|x| x.is_integer());
            let _ = writeln!(tsv, "{}\t{}", join(&qs(p)), if unr { "yes" } else { "no" });
        }
        Value::from(
            polys
                .iter()
                .map(|p| json!({ "slopes": qs(p), "unramified": p.iter().all(|x| x.is_integer()) }))
                .collect::<Vec<_>>(),
        )
    } else {
        Value::Null
    };
    tsv.push_str("# unramified\nclass\trepresentative\tslope\tkappa\tdegree\tw_b\n");
    for (n, pt) in points.iter().enumerate() {
        let _ = writeln!(
            tsv,
            "{}\t{}\t{}\t{}\t{}\t{}",
            pt.cls,
            join(&lat.lift(&pt.cls)),
            join(&qs(&pt.slope)),
            pt.kappa,
            pt.degree(&lat),
            pt.coset_reps.len()
        );
        rows.push(json!({
            "class": pt.cls.to_string(),
            "representative": lat.lift(&pt.cls),
            "slope": qs(&pt.slope),
            "kappa": pt.kappa.to_string(),
            "degree": pt.degree(&lat),
            "mu_ordinary": n == 0,
            "basic": pt.is_central(&lat),
            "levi": one_based(&pt.levi),
            "hn_levi": one_based(&pt.hn_levi),
            "w_b": pt.coset_reps.len(),
            "fiber": pt.fiber(&lat).iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }));
    }
    let mut doc = header(job, Some(&lat));
    doc.insert("mu".into(), json!(mu));
    doc.insert("polygons".into(), polygons);
    doc.insert("unramified".into(), Value::from(rows));
    Ok(emit(job, Value::Object(doc), tsv))
}

fn minuscule_name(c: MinusculeClass) -> &'static str {
    match c {
        MinusculeClass::Minuscule => "minuscule",
        MinusculeClass::QuasiMinuscule => "quasi-minuscule",
        MinusculeClass::Neither => "neither",
    }
}

fn weights(job: &JobSpec, cap: usize) -> Result<Emitted, Failure> {
    let lat = lattice(job)?;
    let rd = &lat.rd;
    let mu = parse_mu_inner(rd, require(job, "mu")?)?;
    let ws = freudenthal(rd, &mu, cap)?;
    let mut all: Vec<(&Vec<i64>, &u64)> = ws.mults.iter().collect();
    all.sort_by(|a, b| rd.two_rho_pairing(b.0).cmp(&rd.two_rho_pairing(a.0)).then_with(|| b.0.cmp(a.0)));
    let mut dominant: Vec<(&Vec<i64>, &u64)> = ws.dominant.iter().collect();
    dominant.sort_by(|a, b| rd.two_rho_pairing(b.0).cmp(&rd.two_rho_pairing(a.0)).then_with(|| b.0.cmp(a.0)));
    let table = coinvariant_weight_table(&ws, &lat);
    let grouped = match job.parameters.get("coinvariant").map(|s| s.as_str()) {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => return Err(Failure(format!("--coinvariant: expected `true` or `false`, got `{other}`"))),
    };
    let mut tsv = String::new();
    if grouped {
        tsv.push_str("class\trepresentative\tdim\n");
        for (c, d) in &table {
            let _ = writeln!(tsv, "{c}\t{}\t{d}", join(&lat.lift(c)));
        }
    } else {
        tsv.push_str("weight\tmultiplicity\n");
        for (w, m) in &all {
            let _ = writeln!(tsv, "{}\t{m}", join(w));
        }
    }
    let mut doc = header(job, Some(&lat));
    doc.insert("mu".into(), json!(mu));
    doc.insert("dim".into(), json!(ws.dim));
    doc.insert("weyl_dimension".into(), json!(weyl_dimension(rd, &mu) as u64));
    doc.insert("class".into(), json!(minuscule_name(classify_minuscule(rd, &mu)?)));
    let pairs = |v: &[(&Vec<i64>, &u64)]| -> Value {
        Value::from(v.iter().map(|(w, m)| json!({ "weight": w, "multiplicity": m })).collect::<Vec<_>>())
    };
    doc.insert("dominant".into(), pairs(&dominant));
    doc.insert("weights".into(), pairs(&all));
    doc.insert(
        "coinvariant_weights".into(),
        Value::from(
            table
                .iter()
                .map(|(c, d)| {
                    let mut o = class_json(&lat, c);
                    o["dim"] = json!(d);
                    o
                })
                .collect::<Vec<_>>(),
        ),
    );
    Ok(emit(job, Value::Object(doc), tsv))
}

fn character_from_params(job: &JobSpec, lat: &CoinvariantLattice) -> Result<(UnramifiedCharacter, Option<ToralParameter>), Failure> {
    let phi = match job.parameters.get("phi") {
        Some(s) => Some(ToralParameter::new(lat, parse_values("phi", s, lat.rank())?)?),
        None => None,
    };
    let chi = match (job.parameters.get("chi"), &phi) {
        (Some(s), _) => UnramifiedCharacter::new(lat, parse_values("chi", s, lat.invariant_basis().len())?)?,
        (None, Some(p)) => p.character(lat),
        (None, None) => return Err(Failure(format!("`{}` needs --chi or --phi", job.command.name()))),
    };
    Ok((chi, phi))
}

fn witness_json(w: &MuWitness) -> Value {
    match w {
        MuWitness::AllPairs { differences } => json!({ "kind": "all-pairs", "differences": differences }),
        MuWitness::FailingPair { nu, nu_prime, t, f } => {
            json!({ "kind": "failing-pair", "nu": nu, "nu_prime": nu_prime, "t": t.to_string(), "f": f })
        }
        MuWitness::Decomposition { pieces, central, failing } => json!({
            "kind": "decomposition",
            "pieces": pieces.iter().map(|(v, m)| json!({ "piece": v, "multiplicity": m })).collect::<Vec<_>>(),
            "central": central,
            "failing": failing.as_ref().map(|f| witness_json(f)),
        }),
    }
}

fn check_character(job: &JobSpec, cap: usize) -> Result<Emitted, Failure> {
    let lat = lattice(job)?;
    let rd = &lat.rd;
    let (chi, _) = character_from_params(job, &lat)?;
    let ladder = condition_ladder(&lat, &chi, cap)?;
    let mut orbits = Vec::new();
    let mut tsv = String::from("orbit\tf\tt\tforbidden\tt_squared_forbidden\n");
    for o in &lat.coroot_orbits {
        let vecs: Vec<Vec<i64>> = o.iter().map(|&k| rd.positive_roots[k].coroot.clone()).collect();
        let (t, f) = orbit_test_value(&lat, &chi, &vecs)?;
        let coeffs: Vec<Vec<i64>> = o.iter().map(|&k| rd.positive_roots[k].coroot_coeffs.clone()).collect();
        let name = coeffs.iter().map(|c| format!("[{}]", join(c))).collect::<Vec<_>>().join(" ");
        let _ = writeln!(tsv, "{name}\t{f}\t{t}\t{}\t{}", t.is_forbidden(f), t.pow(2).is_forbidden(f));
        orbits.push(json!({
            "coroots": coeffs,
            "f": f,
            "t": t.to_string(),
            "forbidden": t.is_forbidden(f),
            "t_squared_forbidden": t.pow(2).is_forbidden(f),
        }));
    }
    let flags = [
        ("weakly_generic", ladder.weakly_generic),
        ("generic", ladder.generic),
        ("condition3", ladder.condition3),
        ("condition4", ladder.condition4),
        ("weakly_normalized_regular", ladder.weakly_normalized_regular),
        ("normalized_regular", ladder.normalized_regular),
        ("regular", ladder.regular),
    ];
    tsv.push_str("# ladder\ncondition\tholds\n");
    for (k, v) in flags {
        let _ = writeln!(tsv, "{k}\t{v}");
    }
    let gln = if is_split_gl(&lat) { Some(gln_principal_series_irreducible(&lat, &chi)?) } else { None };
    let mureg = match job.parameters.get("mu") {
        None => Value::Null,
        Some(s) => {
            let mu = parse_mu_inner(rd, s)?;
            let mode = match job.parameters.get("mode").map(|s| s.as_str()).unwrap_or("strong") {
                "strong" => MuMode::Strong,
                "decomposed" => MuMode::Decomposed(match job.parameters.get("decomposition") {
                    Some(d) => Some(parse_decomposition_inner(rd, d)?),
                    None => None,
                }),
                other => return Err(Failure(format!("--mode: expected `strong` or `decomposed`, got `{other}`"))),
            };
            let r = mu_regularity(&lat, &chi, &mu, &mode, cap)?;
            let _ = writeln!(tsv, "mu_regular\t{}", r.holds);
            json!({
                "mu": mu,
                "mode": if matches!(mode, MuMode::Strong) { "strong" } else { "decomposed" },
                "holds": r.holds,
                "witness": witness_json(&r.witness),
            })
        }
    };
    let mut doc = header(job, Some(&lat));
    doc.insert("character".into(), json!(chi.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    doc.insert("invariant_basis".into(), json!(lat.invariant_basis()));
    doc.insert("coroot_orbits".into(), Value::from(orbits));
    doc.insert(
        "ladder".into(),
        Value::Object(flags.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()),
    );
    doc.insert("failures".into(), json!(ladder.failures));
    doc.insert("gln_irreducible".into(), json!(gln));
    let level = match job.parameters.get("level") {
        Some(l) => l.replace('-', "_"),
        None if mureg.is_null() => "generic".to_string(),
        None => "mu_regular".to_string(),
    };
    let holds = match level.as_str() {
        "mu_regular" => match mureg.get("holds") {
            Some(h) => h.as_bool().unwrap_or(false),
            None => return Err(Failure("--level mu-regular needs --mu".into())),
        },
        l => match flags.iter().find(|(k, _)| *k == l) {
            Some((_, v)) => *v,
            None => return Err(Failure(format!("--level: unknown condition `{l}`"))),
        },
    };
    doc.insert("mu_regularity".into(), mureg);
    doc.insert("level".into(), json!(level));
    doc.insert("holds".into(), json!(holds));
    let mut out = emit(job, Value::Object(doc), tsv);
    if !holds {
        out.check_failed = true;
        let _ = writeln!(out.stderr, "check-character: {level} does not hold");
    }
    Ok(out)
}

fn tilting_cmd(job: &JobSpec) -> Result<Emitted, Failure> {
    let lat = lattice(job)?;
    let rd = &lat.rd;
    let mu = parse_mu_inner(rd, require(job, "mu")?)?;
    if !rd.is_dominant(&mu) {
        return Err(unram::Error::NotDominant(format!("{mu:?}")).into());
    }
    let labels = rd.labels(&mu);
    let primes = tilting::tilting_primes(rd, &mu)?;
    let mut doc = header(job, Some(&lat));
    doc.insert("mu".into(), json!(mu));
    doc.insert("labels".into(), json!(labels));
    doc.insert("sum_bound".into(), json!(tilting::sum_bound(rd, &labels)));
    doc.insert("minuscule".into(), json!(classify_minuscule(rd, &mu)? == MinusculeClass::Minuscule));
    doc.insert("tilting_primes".into(), json!(primes));
    let mut tsv = String::from("ell\ttilting\tterms\n");
    match job.parameters.get("ell") {
        Some(s) => {
            let ell: u64 = parse_number("ell", s)?;
            let sum = tilting::jantzen_sum(rd, &mu, ell)?;
            let is_t = tilting::is_tilting(rd, &mu, ell)?;
            let type_a = match rd.tag().cartan_type() {
                Some((unram::root_datum::CartanType::A, _)) => Some(tilting::type_a_criterion(rd, &mu, ell)?),
                _ => None,
            };
            let very_good = match rd.tag() {
                TypeTag::GL(n) if n < 2 => None,
                t => Some(tilting::is_very_good(ell, &t, lat.twist.order)?),
            };
            let _ = writeln!(tsv, "{ell}\t{is_t}\t{sum}");
            doc.insert("ell".into(), json!(ell));
            doc.insert("tilting".into(), json!(is_t));
            doc.insert("in_closed_alcove".into(), json!(tilting::in_closed_alcove(rd, &labels, ell)));
            doc.insert(
                "terms".into(),
                Value::from(sum.terms.iter().map(|(w, c)| json!({ "weight": w, "coefficient": c })).collect::<Vec<_>>()),
            );
            doc.insert("very_good".into(), json!(very_good));
            doc.insert("type_a_criterion".into(), json!(type_a));
        }
        None => {
            for p in &primes {
                let _ = writeln!(tsv, "{p}\tfalse\t{}", tilting::jantzen_sum(rd, &mu, *p)?);
            }
            doc.insert("ell".into(), Value::Null);
        }
    }
    Ok(emit(job, Value::Object(doc), tsv))
}

fn tilting_table(job: &JobSpec) -> Result<Emitted, Failure> {
    let rows = tilting::fundamental_table(&job.group)?;
    let tsv = tilting::table_to_tsv(&job.group, &rows);
    let golden = tilting::golden_table(&job.group);
    let matches = golden.map(|g| g == tsv);
    let mut doc = header(job, None);
    doc.insert(
        "rows".into(),
        Value::from(
            rows.iter()
                .map(|r| json!({ "coweight": format!("w{}", r.index), "minuscule": r.minuscule, "primes": r.primes }))
                .collect::<Vec<_>>(),
        ),
    );
    doc.insert("golden".into(), json!(golden.is_some()));
    doc.insert("matches_golden".into(), json!(matches));
    let mut out = emit(job, Value::Object(doc), tsv.clone());
    if let (Some(g), Some(false)) = (golden, matches) {
        out.check_failed = true;
        let _ = writeln!(out.stderr, "tilting-table: computed table differs from the checked-in fixture");
        for (a, b) in g.lines().zip(tsv.lines()) {
            if a != b {
                let _ = writeln!(out.stderr, "- {a}\n+ {b}");
            }
        }
    }
    Ok(out)
}

fn averaging(job: &JobSpec, cap: usize) -> Result<Emitted, Failure> {
    let lat = lattice(job)?;
    let mu = parse_mu_inner(&lat.rd, require(job, "mu")?)?;
    require(job, "phi")?;
    let (chi, phi) = character_from_params(job, &lat)?;
    let phi = phi.expect("phi was required");
    let rep = refined_averaging_check(&lat, &mu, &phi, cap)?;
    let ord = mu_ordinary_check(&lat, &mu, &phi, cap)?;
    let mut lemma_ok = true;
    let mut points = Vec::new();
    let mut tsv = String::from("class\tshift\tw\tvalue\tmultiplicity\n");
    for block in &rep.blocks {
        let red = red_b_phi(&lat, &block.point, &chi);
        lemma_ok &= geometric_lemma_red_triv(&lat, &block.point, &chi, cap)? == red.characters();
        let mut summands = Vec::new();
        for ((w, ms), s) in block.per_w.iter().zip(&red.summands) {
            for (v, m) in ms.values() {
                let _ = writeln!(tsv, "{}\t{}\t{w}\t{v}\t{m}", block.point.cls, block.shift);
            }
            summands.push(json!({
                "w": w.to_string(),
                "chi_w": s.twisted.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "character": s.character.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "eigenvalues": ms.values().iter().map(|(v, m)| json!({ "value": v.to_string(), "multiplicity": m })).collect::<Vec<_>>(),
            }));
        }
        let mut p = class_json(&lat, &block.point.cls);
        p["slope"] = json!(qs(&block.point.slope));
        p["shift"] = json!(block.shift);
        p["summands"] = Value::from(summands);
        points.push(p);
    }
    let pass = rep.pass && lemma_ok && ord.iter().all(|e| e.ok);
    let eig = |m: &std::collections::BTreeMap<unram::characters::CharacterValue, u64>| -> Value {
        Value::from(m.iter().map(|(v, k)| json!({ "value": v.to_string(), "multiplicity": k })).collect::<Vec<_>>())
    };
    let mut doc = header(job, Some(&lat));
    doc.insert("mu".into(), json!(mu));
    doc.insert("phi".into(), json!(phi.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    doc.insert("character".into(), json!(chi.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    doc.insert("verdict".into(), json!(if pass { "PASS" } else { "FAIL" }));
    doc.insert(
        "comparison".into(),
        json!("multiset equality of Frobenius eigenvalues with multiplicities and degree shifts; not an isomorphism of representations"),
    );
    doc.insert("per_w_status".into(), json!(if rep.per_w_proved { "proved" } else { "conjectural" }));
    doc.insert("dim".into(), json!(rep.dim));
    doc.insert("total_multiplicity".into(), json!(rep.total_multiplicity));
    doc.insert("points".into(), Value::from(points));
    doc.insert("expected".into(), eig(&rep.expected));
    doc.insert("predicted".into(), eig(&rep.predicted));
    doc.insert(
        "diff".into(),
        Value::from(rep.diff().iter().map(|(v, d)| json!({ "value": v.to_string(), "excess": d })).collect::<Vec<_>>()),
    );
    doc.insert(
        "mu_ordinary".into(),
        Value::from(
            ord.iter()
                .map(|e| json!({ "w": e.w.to_string(), "expected": e.expected.to_string(), "ok": e.ok }))
                .collect::<Vec<_>>(),
        ),
    );
    doc.insert("geometric_lemma_agrees".into(), json!(lemma_ok));
    let mut out = emit(job, Value::Object(doc), tsv);
    if !pass {
        out.check_failed = true;
        out.stderr.push_str("averaging: FAIL\n");
    }
    Ok(out)
}
