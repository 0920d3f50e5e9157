use subvac_core::casimir::HBAR_C_JOULE_METRE;
use subvac_core::decay::uniform_phases;
use subvac_core::mode::period_average;
use subvac_core::qi::FOUR_D_NOTE;
use subvac_core::{
    casimir_tensor, decay_ratio, energy_density, make_by_name, negative_interval, pressure_consistency,
    qi_bound as core_qi_bound, transit_scan, CavityModeProfile, Complex64, FluctuationDistribution, FockOracle,
    ModeSpec, ModeState,
};

use crate::envelope::Envelope;
use crate::{
    parameters, CasimirArgs, CliError, CliResult, DecayArgs, DistAction, DistArgs, FunctionName, ModeEnergyArgs,
    QiBoundArgs, StateName,
};

const CASIMIR_NOTE: &str = "perfect conductors assumed; for a plasma-model dielectric the \
energy density at the centre of the gap is negative only once omega_p * a > 100";

pub fn qi_bound(args: &QiBoundArgs) -> CliResult<Envelope> {
    if args.dimension != 2 {
        return Err(CliError::Usage(format!(
            "no bound is computed for dimension {}; only d = 2 is supported ({FOUR_D_NOTE})",
            args.dimension
        )));
    }
    let name = match args.function {
        FunctionName::Gaussian => "gaussian",
        FunctionName::Lorentzian => "lorentzian",
        FunctionName::Bump => "bump",
    };
    let g = make_by_name(name, args.tau)?;
    let b = core_qi_bound(&g, args.dimension)?;
    let mut env = Envelope::new("qi-bound", parameters(args), &["function", "tau", "d", "C", "bound"]);
    env.push(vec![
        name.into(),
        b.tau.into(),
        (b.dimension as usize).into(),
        b.coefficient.into(),
        b.bound_value.into(),
    ]);
    env.note(FOUR_D_NOTE);
    Ok(env)
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn grid(args: &DistArgs, default: (f64, f64)) -> CliResult<Vec<f64>> {
    if let Some(x) = args.x {
        return Ok(vec![x]);
    }
    let (lo, hi) = match args.range.as_deref() {
        Some([lo, hi]) => (*lo, *hi),
        Some(_) => return Err(CliError::Usage("--range takes exactly two values LO,HI".into())),
        None => default,
    };
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!("invalid range {lo},{hi}")));
    }
    if args.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    Ok(linspace(lo, hi, args.points))
}

pub fn dist(args: &DistArgs) -> CliResult<Envelope> {
    let d = FluctuationDistribution::new(args.c, args.x0)?;
    let default_range = (-d.x0(), 0.25);
    let params = parameters(args);
    let env = match args.action {
        DistAction::Pdf => {
            let mut env = Envelope::new("dist", params, &["x", "pdf"]);
            for x in grid(args, default_range)? {
                env.push(vec![x.into(), d.pdf(x).into()]);
            }
            env
        }
        DistAction::Cdf => {
            let mut env = Envelope::new("dist", params, &["x", "cdf"]);
            for x in grid(args, default_range)? {
                env.push(vec![x.into(), d.cdf(x).into()]);
            }
            env
        }
        DistAction::Fig2 => {
            let mut env = Envelope::new("dist", params, &["x", "pdf", "cutoff"]);
            for x in grid(args, (-0.06, 0.25))? {
                env.push(vec![x.into(), d.pdf(x).into(), (-d.x0()).into()]);
            }
            env.note(format!("lower limit of the distribution at x = -x0 = {:?}", -d.x0()));
            env
        }
        DistAction::Sample => {
            if args.n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let draws = d.sample_seeded(args.seed, args.n);
            let mut env = Envelope::new("dist", params, &["index", "x", "excess", "negative"]).with_seed(args.seed);
            let mut negative = 0usize;
            for (i, s) in draws.iter().enumerate() {
                negative += s.is_negative() as usize;
                env.push(vec![i.into(), s.x().into(), s.excess().into(), s.is_negative().into()]);
            }
            env.note(format!(
                "negative fraction {:?} (exact cdf(0) = {:?})",
                negative as f64 / args.n as f64,
                d.cdf(0.0)
            ));
            env
        }
        DistAction::Moments => {
            let m = d.moments();
            let mut env = Envelope::new("dist", params, &["mean", "variance", "skewness", "cdf0"]);
            env.push(vec![m.mean.into(), m.variance.into(), m.skewness.into(), d.cdf(0.0).into()]);
            env
        }
    };
    Ok(env)
}

fn mode_state(args: &ModeEnergyArgs) -> CliResult<ModeState> {
    Ok(match args.state {
        StateName::Vacuum => ModeState::Vacuum,
        StateName::Coherent => ModeState::coherent(Complex64::new(args.alpha_re, args.alpha_im))?,
        StateName::Squeezed => ModeState::squeezed(args.r, args.theta)?,
    })
}

pub fn mode_energy(args: &ModeEnergyArgs) -> CliResult<Envelope> {
    let spec = ModeSpec::new(args.omega, args.length, args.x)?;
    let state = mode_state(args)?;
    if args.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    let oracle = if args.oracle {
        if args.truncation < 2 {
            return Err(CliError::Usage("--truncation must be at least 2".into()));
        }
        Some(FockOracle::prepare(&state, args.truncation)?)
    } else {
        None
    };

    let columns: &[&str] =
        if oracle.is_some() { &["t", "rho", "negative", "oracle", "rel_diff"] } else { &["t", "rho", "negative"] };
    let mut env = Envelope::new("mode-energy", parameters(args), columns);
    // oracle differences are taken relative to the peak |ρ| over the cycle
    let peak = spec.quantum_density() * (state.mean_number() + state.pair_amplitude().norm());
    let period = spec.density_period();
    for k in 0..args.points {
        let t = period * k as f64 / args.points as f64;
        let rho = energy_density(&spec, &state, t);
        let mut row = vec![t.into(), rho.into(), (rho < 0.0).into()];
        if let Some(o) = &oracle {
            let q = o.energy_density(&spec, t);
            let rel = if peak > 0.0 { (rho - q).abs() / peak } else { (rho - q).abs() };
            row.push(q.into());
            row.push(rel.into());
        }
        env.push(row);
    }

    env.note(format!("period average {:?}", period_average(&spec, &state)));
    if let Some(w) = negative_interval(&spec, &state) {
        env.note(format!("rho < 0 on ({:?}, {:?}) with minimum {:?}", w.t_start, w.t_end, w.min_density));
    }
    if !spec.fits_box() {
        env.note("omega * L / (2 pi) is not an integer; the mode does not fit a periodic box");
    }
    if let Some(o) = &oracle {
        env.note(format!("oracle truncation {}", o.truncation()));
    }
    Ok(env)
}

pub fn casimir(args: &CasimirArgs) -> CliResult<Envelope> {
    let t = casimir_tensor(args.separation)?;
    let p = pressure_consistency(args.separation)?;
    // in SI the same numbers carry a factor ħc and the separation is in metres
    let unit = if args.si { HBAR_C_JOULE_METRE } else { 1.0 };
    let mut env = Envelope::new("casimir", parameters(args), &["quantity", "value"]);
    for (name, value) in [
        ("T_tt", t.energy_density()),
        ("T_xx", t.t_xx()),
        ("T_yy", t.t_yy()),
        ("T_zz", t.t_zz()),
        ("trace", t.trace()),
        ("energy_per_area", p.energy_per_area),
        ("force_per_area", p.force_per_area),
        ("force_per_area_numeric", p.force_per_area_numeric),
    ] {
        env.push(vec![name.into(), (value * unit).into()]);
    }
    env.note(if args.si {
        "separation in metres; densities and stresses in J/m^3 (= Pa), energy per area in J/m^2"
    } else {
        "natural units hbar = c = 1"
    });
    env.note(CASIMIR_NOTE);
    Ok(env)
}

pub fn decay(args: &DecayArgs) -> CliResult<Envelope> {
    let profile = CavityModeProfile::new(args.f_squared, 0.0)?;
    if let Some(e2) = args.e2 {
        let r = decay_ratio(&profile, e2)?;
        let mut env = Envelope::new("decay", parameters(args), &["e2", "ratio", "suppressed"]);
        env.push(vec![r.e2.into(), r.ratio.into(), r.suppressed.into()]);
        return Ok(env);
    }

    let spec = ModeSpec::new(1.0, 100.0, 0.0)?;
    let state = ModeState::squeezed(args.r, args.theta)?;
    let phases = uniform_phases(args.phases);
    let reports = transit_scan(&spec, &state, &profile, &phases)?;
    let mut env = Envelope::new("decay", parameters(args), &["phase", "e2", "ratio", "suppressed"]);
    for (phase, r) in phases.iter().zip(&reports) {
        env.push(vec![(*phase).into(), r.e2.into(), r.ratio.into(), r.suppressed.into()]);
    }
    let mean = reports.iter().map(|r| r.ratio).sum::<f64>() / reports.len() as f64;
    let suppressed = reports.iter().filter(|r| r.suppressed).count();
    env.note(format!("cycle-mean ratio {mean:?}; {suppressed} of {} phases suppressed", reports.len()));
    Ok(env)
}
