use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use uniformizer_core::completion::{
    uniformize_discrete_rational, DiscretePresentation, GeneratorSpec,
};
use uniformizer_core::polyfield::{
    render_ratfun, render_rational, BaseField, RationalFunction, SparsePoly,
};
use uniformizer_core::uniformize::{compose, uniformize_abhyankar, verify, TriangularSystem};
use uniformizer_core::valuation::MonomialPlace;
use uniformizer_core::valuegroup::{
    is_valid_perron, max_steps, perron_positive_basis, GroupElement, GroupOrder, SurdScalar,
};
use uniformizer_core::Error as CoreError;

use crate::emit::{
    place_json, report_json, report_text, residue_json, system_json, system_text, value_json,
    value_text,
};
use crate::error::{CliError, CliResult};
use crate::schema::{read_base, read_elements, read_place, read_system, Node, PlaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Value,
    Residue,
    Perron,
    Uniformize,
    Compose,
    Verify,
    DiscreteUniformize,
    Report,
    /// Randomized end-to-end check of the library; takes no input.
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Value => "value",
            Command::Residue => "residue",
            Command::Perron => "perron",
            Command::Uniformize => "uniformize",
            Command::Compose => "compose",
            Command::Verify => "verify",
            Command::DiscreteUniformize => "discrete-uniformize",
            Command::Report => "report",
            Command::Selftest => "selftest",
        }
    }

    pub fn needs_input(self) -> bool {
        self != Command::Selftest
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub precision: Option<i64>,
}

/// Result payload in both renderings.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub result: Value,
    pub text: Vec<String>,
}

struct Problem<'a> {
    root: Node<'a>,
    precision: Option<i64>,
}

impl<'a> Problem<'a> {
    fn base(&self) -> CliResult<BaseField> {
        read_base(&self.root.field("base_field")?)
    }

    fn place(&self) -> CliResult<PlaceSpec> {
        read_place(&self.root.field("place")?, self.base()?, self.precision)
    }

    fn elements(&self, place: &PlaceSpec) -> CliResult<Vec<RationalFunction>> {
        read_elements(
            &self.root.field("elements")?,
            &place.var_names(),
            self.base()?,
        )
    }

    fn request(&self) -> CliResult<Node<'a>> {
        self.root.field("request")
    }

    fn monomial(&self, place: PlaceSpec, cmd: Command) -> CliResult<MonomialPlace> {
        match place {
            PlaceSpec::Monomial(p) => Ok(p),
            PlaceSpec::Discrete { .. } => Err(CliError::Core(CoreError::precondition(format!(
                "{} needs a monomial place",
                cmd.name()
            )))),
        }
    }

    /// `request.op`, when given, must name the command being run.
    fn check_op(&self, cmd: Command) -> CliResult<()> {
        let Some(req) = self.root.opt("request") else {
            return Ok(());
        };
        if let Some(op) = req.opt("op") {
            let name = op.str()?;
            if name != cmd.name() {
                return Err(CliError::schema(
                    op.path,
                    format!(
                        "request is for '{name}' but the command is '{}'",
                        cmd.name()
                    ),
                ));
            }
        }
        Ok(())
    }
}

pub fn execute(cmd: Command, input: Option<&Value>, opts: &Options) -> CliResult<Outcome> {
    if let Command::Selftest = cmd {
        return selftest(opts.seed);
    }
    let input = input.ok_or_else(|| CliError::Usage(format!("{} needs --input", cmd.name())))?;
    let problem = Problem {
        root: Node::root(input),
        precision: opts.precision,
    };
    problem.check_op(cmd)?;
    match cmd {
        Command::Value => value(&problem),
        Command::Residue => residue(&problem),
        Command::Report => report(&problem),
        Command::Perron => perron(&problem),
        Command::Uniformize => {
            let place = problem.place()?;
            let zetas = problem.elements(&place)?;
            let place = problem.monomial(place, cmd)?;
            certified(uniformize_abhyankar(&place, &zetas)?)
        }
        Command::DiscreteUniformize => {
            let place = problem.place()?;
            let zetas = problem.elements(&place)?;
            let PlaceSpec::Discrete { pres, precision } = place else {
                return Err(CliError::Core(CoreError::precondition(
                    "discrete-uniformize needs a discrete_series place",
                )));
            };
            certified(uniformize_discrete_rational(&pres, &zetas, precision)?)
        }
        Command::Compose => {
            let req = problem.request()?;
            let outer = read_system(&req.field("outer")?, opts.precision)?;
            let inner = read_system(&req.field("inner")?, opts.precision)?;
            certified(compose(&outer, &inner)?)
        }
        Command::Verify => {
            // A problem with `request.system`, a certificate, or a bare system.
            let node = match problem.root.opt("request").and_then(|r| r.opt("system")) {
                Some(n) => n,
                None => problem.root.clone(),
            };
            let sys = read_system(&node, opts.precision)?;
            let r = verify(&sys);
            Ok(Outcome {
                result: json!({"report": report_json(&r)}),
                text: report_text(&r),
            })
        }
        Command::Selftest => unreachable!("handled above"),
    }
}

/// A system together with its passing report.
fn certified(sys: TriangularSystem) -> CliResult<Outcome> {
    let r = verify(&sys);
    if !r.passed() {
        let failed: Vec<String> = report_text(&r)
            .into_iter()
            .filter(|l| l.contains("fail"))
            .collect();
        return Err(CliError::Unverified(failed.join("; ")));
    }
    let mut text = system_text(&sys);
    text.extend(report_text(&r));
    Ok(Outcome {
        result: json!({"system": system_json(&sys), "report": report_json(&r)}),
        text,
    })
}

fn value(problem: &Problem) -> CliResult<Outcome> {
    let place = problem.place()?;
    let names = place.var_names();
    let ambient = place.ambient()?;
    let mut entries = Vec::new();
    let mut text = Vec::new();
    for h in problem.elements(&place)? {
        if h.is_zero() {
            return Err(CliError::Core(CoreError::ValueOfZero));
        }
        let v = ambient.value_of(&h)?;
        let src = render_ratfun(&h, &names);
        text.push(format!("v({src}) = {}", value_text(&v)));
        entries.push(json!({"element": src, "value": value_json(&v)}));
    }
    Ok(Outcome {
        result: json!({"values": entries}),
        text,
    })
}

fn residue(problem: &Problem) -> CliResult<Outcome> {
    let place = problem.place()?;
    let names = place.var_names();
    let ambient = place.ambient()?;
    let mut entries = Vec::new();
    let mut text = Vec::new();
    for h in problem.elements(&place)? {
        let r = ambient.residue_of(&h)?;
        let src = render_ratfun(&h, &names);
        text.push(format!("res({src}) = {}", r.render()));
        entries.push(json!({"element": src, "residue": residue_json(&r)}));
    }
    Ok(Outcome {
        result: json!({"residues": entries}),
        text,
    })
}

/// `(trdeg, rational rank, residue trdeg, Abhyankar)` of the place.
fn invariants(place: &PlaceSpec) -> (usize, usize, usize, bool) {
    match place {
        PlaceSpec::Monomial(p) => {
            let r = p.abhyankar_report();
            (r.trdeg, r.rational_rank, r.residue_trdeg, r.is_abhyankar)
        }
        PlaceSpec::Discrete { pres, .. } => match pres.generator {
            None | Some(GeneratorSpec::Algebraic { .. }) => (1, 1, 0, true),
            // The completion realizes an immediate transcendental extension.
            Some(GeneratorSpec::Transcendental { .. }) => (2, 1, 0, false),
        },
    }
}

fn report(problem: &Problem) -> CliResult<Outcome> {
    let place = problem.place()?;
    let names = place.var_names();
    let ambient = place.ambient()?;
    let (trdeg, rr, rtd, abhyankar) = invariants(&place);
    let mut text = vec![
        format!("base field: {}", ambient.base()),
        format!("generators: {}", names.join(", ")),
        format!("trdeg {trdeg}, rational rank {rr}, residue trdeg {rtd}, Abhyankar: {abhyankar}"),
    ];
    let mut entries = Vec::new();
    for h in problem.elements(&place)? {
        let src = render_ratfun(&h, &names);
        if h.is_zero() {
            text.push(format!("{src}: zero"));
            entries.push(json!({"element": src, "value": null, "residue": "0", "in_ring": true}));
            continue;
        }
        let v = ambient.value_of(&h)?;
        let in_ring = v.signum() != std::cmp::Ordering::Less;
        let r = if in_ring {
            Some(ambient.residue_of(&h)?)
        } else {
            None
        };
        text.push(match &r {
            Some(r) => format!("{src}: value {}, residue {}", value_text(&v), r.render()),
            None => format!("{src}: value {}, not in the valuation ring", value_text(&v)),
        });
        entries.push(json!({
            "element": src,
            "value": value_json(&v),
            "residue": r.as_ref().map(residue_json),
            "in_ring": in_ring,
        }));
    }
    Ok(Outcome {
        result: json!({
            "place": place_json(&ambient),
            "trdeg": trdeg,
            "rational_rank": rr,
            "residue_trdeg": rtd,
            "abhyankar": abhyankar,
            "elements": entries,
        }),
        text,
    })
}

fn coords_json(g: &GroupElement) -> Value {
    json!(g.coords().iter().map(render_rational).collect::<Vec<_>>())
}

fn perron(problem: &Problem) -> CliResult<Outcome> {
    let place = problem.monomial(problem.place()?, Command::Perron)?;
    let order = place.order().clone();
    let alphas: Vec<GroupElement> = match problem.root.opt("request").and_then(|r| r.opt("alphas"))
    {
        Some(list) => list
            .array()?
            .iter()
            .map(|a| {
                let coords = a
                    .array()?
                    .iter()
                    .map(Node::rational)
                    .collect::<CliResult<Vec<_>>>()?;
                GroupElement::new(order.clone(), coords)
                    .map_err(|e| CliError::schema(a.path.clone(), e.to_string()))
            })
            .collect::<CliResult<_>>()?,
        None => problem
            .elements(&PlaceSpec::Monomial(place.clone()))?
            .iter()
            .map(|h| {
                if h.is_zero() {
                    return Err(CliError::Core(CoreError::ValueOfZero));
                }
                Ok(place.value_of_ratfun(h)?)
            })
            .collect::<CliResult<_>>()?,
    };
    let out = perron_positive_basis(&order, &alphas)?;
    if !is_valid_perron(&order, &alphas, &out) {
        return Err(CliError::Unverified(
            "Perron basis fails its validity check".into(),
        ));
    }
    let mut text: Vec<String> = out
        .basis
        .iter()
        .enumerate()
        .map(|(j, b)| format!("beta{} = {b}", j + 1))
        .collect();
    for (i, c) in out.coeffs.iter().enumerate() {
        let c: Vec<String> = c.iter().map(i64::to_string).collect();
        text.push(format!("alpha{} = ({}) in the basis", i + 1, c.join(", ")));
    }
    Ok(Outcome {
        result: json!({
            "alphas": alphas.iter().map(coords_json).collect::<Vec<_>>(),
            "basis": out.basis.iter().map(coords_json).collect::<Vec<_>>(),
            "coeffs": out.coeffs,
            "change": out.change,
            "valid": true,
            "max_steps": max_steps(),
        }),
        text,
    })
}

const SQUARE_FREE: [u64; 8] = [1, 2, 3, 5, 6, 7, 10, 11];

fn random_place(rng: &mut ChaCha8Rng, base: BaseField) -> CliResult<MonomialPlace> {
    let rho = rng.gen_range(1..=3);
    let tau = rng.gen_range(0..=2);
    let mut ds = SQUARE_FREE.to_vec();
    let mut weights = Vec::with_capacity(rho);
    for _ in 0..rho {
        let d = ds.remove(rng.gen_range(0..ds.len()));
        let q = num_rational::BigRational::new(
            rng.gen_range(1..=5).into(),
            rng.gen_range(1..=3).into(),
        );
        weights.push(SurdScalar::surd(q, d)?);
    }
    Ok(MonomialPlace::new(
        base,
        GroupOrder::archimedean(weights)?,
        tau,
    )?)
}

fn random_poly(rng: &mut ChaCha8Rng, base: BaseField, nvars: usize) -> SparsePoly {
    loop {
        let mut p = SparsePoly::zero(base, nvars);
        for _ in 0..rng.gen_range(1..=4) {
            let m = uniformizer_core::polyfield::Monomial(
                (0..nvars).map(|_| rng.gen_range(0..=3)).collect(),
            );
            let c = base.from_i64(rng.gen_range(-9..=9));
            p = &p + &SparsePoly::monomial(base, nvars, m, c);
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random Abhyankar instances and the worked series instance, each checked
/// by the verifier.
fn selftest(seed: u64) -> CliResult<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let rounds = 20;
    for k in 0..rounds {
        let base = if k % 2 == 0 {
            BaseField::Rationals
        } else {
            BaseField::Prime(5)
        };
        let place = random_place(&mut rng, base)?;
        let nv = place.nvars();
        let zetas: Vec<RationalFunction> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let r = RationalFunction::new(
                    random_poly(&mut rng, base, nv),
                    random_poly(&mut rng, base, nv),
                )
                .expect("nonzero denominator");
                if place.in_valuation_ring(&r) {
                    r
                } else {
                    r.inv().expect("nonzero")
                }
            })
            .collect();
        match uniformize_abhyankar(&place, &zetas) {
            Ok(sys) if verify(&sys).passed() => {}
            Ok(_) => failures.push(format!("instance {k}: verification failed")),
            Err(e) => failures.push(format!("instance {k}: {e}")),
        }
    }
    let f5 = BaseField::Prime(5);
    let t = SparsePoly::var(f5, 2, 0);
    let z = SparsePoly::var(f5, 2, 1);
    let pres = DiscretePresentation {
        base: f5,
        t_name: "t".into(),
        generator: Some(GeneratorSpec::Algebraic {
            z_name: "z".into(),
            min_poly: &(&z.pow(2) - &SparsePoly::one(f5, 2)) - &t,
            residue: f5.one(),
        }),
    };
    let zr = RationalFunction::var(f5, 2, 1);
    let tr = RationalFunction::var(f5, 2, 0);
    let zetas = vec![
        zr.clone(),
        &zr + &tr,
        (&zr - &RationalFunction::one(f5, 2)).checked_div(&tr)?,
    ];
    match uniformize_discrete_rational(&pres, &zetas, 16) {
        Ok(sys) if verify(&sys).passed() => {}
        Ok(_) => failures.push("series instance: verification failed".into()),
        Err(e) => failures.push(format!("series instance: {e}")),
    }
    let total = rounds + 1;
    if !failures.is_empty() {
        return Err(CliError::Unverified(failures.join("; ")));
    }
    Ok(Outcome {
        result: json!({"seed": seed, "instances": total, "passed": total}),
        text: vec![format!(
            "selftest seed {seed}: {total}/{total} instances verified"
        )],
    })
}
