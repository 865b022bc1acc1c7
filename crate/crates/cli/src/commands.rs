//! `compute`, `certify` and `sample`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;

use novikov_core::{
    amenability_consistency, assemble_presentation_complex, certify_scan, certify_without_class, evaluate_classes,
    flag_jumps, generic_dims, load_complex, novikov_betti, parse_character_row, parse_presentation, sample_bundle,
    scan_candidates, torsion_count, validate_character, verify_certificate, BoundaryComplex, BundlePoint,
    CharacterClass, Direction, Error, Presentation, RankOptions, TorsionMethod, TorsionOptions,
};

use crate::error::{CliError, Result};
use crate::job::{ClassSpec, JobInput, JobSpec};
use crate::report::*;

/// Default scan budget for `certify` when no class is given.
pub const DEFAULT_SCAN: usize = 10;

#[derive(Default)]
struct Clock {
    enabled: bool,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            *self.laps.entry(label.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
        }
        out
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.laps)
    }
}

enum Source {
    Presentation(Presentation),
    Complex(BoundaryComplex),
}

struct Target {
    label: ClassLabel,
    complex: BoundaryComplex,
}

fn load_source(job: &JobSpec) -> Result<Source> {
    Ok(match &job.input {
        JobInput::Presentation { text } => Source::Presentation(parse_presentation(text)?),
        JobInput::Complex { document } => Source::Complex(load_complex(document)?),
    })
}

fn summarize(source: &Source) -> InputSummary {
    match source {
        Source::Presentation(p) => InputSummary {
            kind: "presentation",
            presentation: Some(p.to_string()),
            generators: Some(p.num_generators()),
            relators: Some(p.num_relators()),
            dims: vec![1, p.num_generators(), p.num_relators()],
            euler: p.euler_characteristic(),
        },
        Source::Complex(c) => InputSummary {
            kind: "complex",
            presentation: None,
            generators: None,
            relators: None,
            dims: c.dims().to_vec(),
            euler: c.euler_characteristic(),
        },
    }
}

pub fn parse_class(p: &Presentation, rows: &[String]) -> Result<CharacterClass> {
    let parsed = rows
        .iter()
        .map(|r| parse_character_row(p, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(validate_character(p, parsed)?)
}

fn label(p: &Presentation, xi: &CharacterClass) -> ClassLabel {
    ClassLabel {
        rows: Some(xi.row_strings()),
        display: xi.display(p.generators()).to_string(),
    }
}

fn classes_of(p: &Presentation, spec: &ClassSpec, seed: u64) -> Result<Vec<CharacterClass>> {
    match spec {
        ClassSpec::Explicit { classes } => {
            if classes.is_empty() {
                return Err(CliError::Input("explicit class list is empty".into()));
            }
            classes.iter().map(|rows| parse_class(p, rows)).collect()
        }
        ClassSpec::Scan { budget } => {
            if *budget == 0 {
                return Err(CliError::Input("scan budget must be positive".into()));
            }
            Ok(scan_candidates(p, *budget, seed)?)
        }
        ClassSpec::Given => Err(CliError::Input(
            "a given class needs a complex input; pass --xi or --scan with a presentation".into(),
        )),
    }
}

fn targets(source: &Source, spec: Option<&ClassSpec>, seed: u64) -> Result<Vec<Target>> {
    match source {
        Source::Complex(c) => match spec {
            None | Some(ClassSpec::Given) => Ok(vec![Target {
                label: ClassLabel {
                    rows: None,
                    display: format!("given by the ring Z[{}]", c.variables().join(", ")),
                },
                complex: c.clone(),
            }]),
            Some(_) => Err(CliError::Input(
                "complex inputs carry their class; use --xi-given".into(),
            )),
        },
        Source::Presentation(p) => {
            let spec = spec.ok_or_else(|| CliError::Input("no class given; pass --xi, --xi-rows or --scan".into()))?;
            classes_of(p, spec, seed)?
                .into_iter()
                .map(|xi| {
                    Ok(Target {
                        label: label(p, &xi),
                        complex: assemble_presentation_complex(p, &xi)?,
                    })
                })
                .collect()
        }
    }
}

fn rank_options(job: &JobSpec) -> RankOptions {
    RankOptions {
        method: job.options.method,
        exact_size_bound: job.options.exact_bound,
        seed: job.seed,
    }
}

fn torsion_options(job: &JobSpec) -> TorsionOptions {
    TorsionOptions {
        minor_cap: job.options.minor_cap as u128,
        diagonalize: job.options.diagonalize,
    }
}

fn torsion_report(c: &BoundaryComplex, opts: &TorsionOptions) -> Result<TorsionReport> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let method = if opts.diagonalize {
        TorsionMethod::Diagonalization
    } else {
        TorsionMethod::Minors
    };
    let mut carried_by = Vec::new();
    for i in 0..=c.top_dim() {
        for (direction, out) in [(Direction::Plus, &mut plus), (Direction::Minus, &mut minus)] {
            let t = torsion_count(c, i, direction, opts)?;
            if t.value > 0 {
                carried_by.push(TorsionCarrier {
                    degree: i,
                    direction,
                    value: t.value,
                });
            }
            debug_assert_eq!(t.method, method);
            out.push(t.value);
        }
    }
    Ok(TorsionReport {
        plus,
        minus,
        method,
        carried_by,
    })
}

fn parse_point(text: &str, r: usize) -> Result<BundlePoint> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<BigRational>()
                .map_err(|_| CliError::Input(format!("malformed point coordinate `{}`", s.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != r {
        return Err(Error::from(novikov_core::AlgebraError::PointDimension {
            expected: r,
            got: coords.len(),
        })
        .into());
    }
    Ok(BundlePoint::Rational { coords })
}

pub fn run_compute(job: &JobSpec, timings: bool) -> Result<ComputeReport> {
    let mut clock = Clock {
        enabled: timings,
        ..Clock::default()
    };
    let source = load_source(job)?;
    let input = summarize(&source);
    let targets = targets(&source, job.classes.as_ref(), job.seed)?;
    let ropts = rank_options(job);
    let topts = torsion_options(job);
    let mut results = Vec::new();
    for t in targets {
        let comp = clock.time("betti", || novikov_betti(&t.complex, &ropts));
        let torsion = if job.options.torsion {
            Some(clock.time("torsion", || torsion_report(&t.complex, &topts))?)
        } else {
            None
        };
        let sampler = if job.options.samples > 0 {
            let mut g = clock.time("sampler", || generic_dims(&t.complex, job.options.samples, job.seed))?;
            flag_jumps(&mut g.samples, &comp.betti);
            Some(SamplerReport {
                samples: g.samples.len(),
                agrees_with_betti: g.min_dims == comp.betti,
                min_dims: g.min_dims,
                jumps: g.samples.into_iter().filter(|s| s.non_generic).collect(),
            })
        } else {
            None
        };
        results.push(ClassResult {
            class: t.label,
            boundaries: job.options.echo.then(|| t.complex.to_json()),
            probabilistic: comp.probabilistic(),
            ranks: comp.boundary_ranks,
            betti: comp.betti,
            torsion,
            sampler,
        });
    }
    Ok(ComputeReport {
        tool: TOOL,
        command: "compute",
        seed: job.seed,
        job: job.clone(),
        input,
        results,
        timings_ms: clock.finish(),
    })
}

pub fn run_certify(job: &JobSpec, timings: bool) -> Result<CertifyReport> {
    let mut clock = Clock {
        enabled: timings,
        ..Clock::default()
    };
    let source = load_source(job)?;
    let input = summarize(&source);
    let Source::Presentation(p) = &source else {
        return Err(CliError::Input("certificates need a presentation input".into()));
    };
    let spec = job.classes.clone().unwrap_or(ClassSpec::Scan { budget: DEFAULT_SCAN });
    let classes = match classes_of(p, &spec, job.seed) {
        Ok(c) => Some(c),
        Err(CliError::Core(Error::NoClass)) => None,
        Err(e) => return Err(e),
    };
    let Some(classes) = classes else {
        let certificate = certify_without_class(p);
        let witnesses_verified = verify_certificate(p, &certificate)?;
        return Ok(CertifyReport {
            tool: TOOL,
            command: "certify",
            seed: job.seed,
            job: job.clone(),
            input,
            class_status: ClassStatus::NoClass,
            classes: Vec::new(),
            certificate,
            witnesses_verified,
            timings_ms: clock.finish(),
        });
    };
    let ropts = rank_options(job);
    let entries = clock.time("scan", || evaluate_classes(p, classes.clone(), &ropts, None))?;
    let mut certificate = certify_scan(p, &entries);
    if job.options.assert_amenable {
        certificate.amenability = Some(clock.time("amenability", || amenability_consistency(p, &classes))?);
    }
    let witnesses_verified = clock.time("verify", || verify_certificate(p, &certificate))?;
    let scanned = entries
        .iter()
        .map(|e| ScannedClass {
            class: label(p, &e.class),
            b1: e.numbers.b1(),
            betti: e.numbers.betti.clone(),
            probabilistic: e.probabilistic,
        })
        .collect();
    Ok(CertifyReport {
        tool: TOOL,
        command: "certify",
        seed: job.seed,
        job: job.clone(),
        input,
        class_status: ClassStatus::Ok,
        classes: scanned,
        certificate,
        witnesses_verified,
        timings_ms: clock.finish(),
    })
}

pub fn run_sample(job: &JobSpec, timings: bool) -> Result<SampleReport> {
    let mut clock = Clock {
        enabled: timings,
        ..Clock::default()
    };
    let source = load_source(job)?;
    let input = summarize(&source);
    let targets = targets(&source, job.classes.as_ref(), job.seed)?;
    let ropts = rank_options(job);
    let mut results = Vec::new();
    for t in targets {
        let r = t.complex.ring_rank();
        let betti = clock.time("betti", || novikov_betti(&t.complex, &ropts)).betti;
        let mut points = job
            .options
            .points
            .iter()
            .map(|s| Ok(sample_bundle(&t.complex, &parse_point(s, r)?)?))
            .collect::<Result<Vec<_>>>()?;
        flag_jumps(&mut points, &betti);
        let (mut samples, min_dims) = if job.options.samples > 0 {
            let g = clock.time("sampler", || generic_dims(&t.complex, job.options.samples, job.seed))?;
            (g.samples, g.min_dims)
        } else if !points.is_empty() {
            let len = points[0].dims.len();
            let min = (0..len)
                .map(|i| points.iter().map(|s| s.dims[i]).min().unwrap())
                .collect();
            (Vec::new(), min)
        } else {
            return Err(CliError::Input("nothing to sample: pass --samples N or --point".into()));
        };
        flag_jumps(&mut samples, &betti);
        results.push(SampleResult {
            class: t.label,
            agrees_with_betti: min_dims == betti,
            betti,
            min_dims,
            samples,
            points,
        });
    }
    Ok(SampleReport {
        tool: TOOL,
        command: "sample",
        seed: job.seed,
        job: job.clone(),
        input,
        results,
        timings_ms: clock.finish(),
    })
}

fn list(v: &[usize]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

pub fn summary_compute(r: &ComputeReport) -> String {
    let mut out = String::new();
    for c in &r.results {
        out += &format!("class [{}]: betti {}", c.class.display, list(&c.betti));
        if c.probabilistic {
            out += " (probabilistic)";
        }
        if let Some(t) = &c.torsion {
            out += &format!(", torsion +xi {} -xi {}", list(&t.plus), list(&t.minus));
        }
        if let Some(s) = &c.sampler {
            out += &format!(
                ", sampler min {} over {} points{}",
                list(&s.min_dims),
                s.samples,
                if s.agrees_with_betti { "" } else { " DISAGREES" }
            );
        }
        out.push('\n');
    }
    out
}

pub fn summary_certify(r: &CertifyReport) -> String {
    let cert = &r.certificate;
    let mut out = format!(
        "verdict: {}\n",
        serde_json::to_value(cert.verdict).unwrap().as_str().unwrap()
    );
    if let ClassStatus::NoClass = r.class_status {
        out += "no nonzero class: the abelianization has rank 0\n";
    }
    for route in &cert.routes {
        out += &format!("  route {}: {}\n", route.name(), serde_json::to_string(route).unwrap());
    }
    for b in &cert.bns_implications {
        out += &format!("  {}\n", b.statement);
    }
    if let Some(a) = &cert.amenability {
        out += &format!(
            "amenability consistency: {} over {} classes\n",
            serde_json::to_value(a.status).unwrap().as_str().unwrap(),
            a.classes_checked
        );
        if let Some(w) = &a.witness {
            out += &format!("  violating class {:?} has b_1 = {}\n", w.class, w.b1);
        }
    }
    out += &format!("classes evaluated: {}\n", r.classes.len());
    out
}

pub fn summary_sample(r: &SampleReport) -> String {
    let mut out = String::new();
    for s in &r.results {
        let jumps = s.samples.iter().chain(&s.points).filter(|x| x.non_generic).count();
        out += &format!(
            "class [{}]: betti {}, min over samples {}, {} non-generic point(s)\n",
            s.class.display,
            list(&s.betti),
            list(&s.min_dims),
            jumps
        );
    }
    out
}

/// Betti and torsion table: `class,degree,betti,q_plus,q_minus`.
pub fn write_csv(r: &ComputeReport, w: impl std::io::Write) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["class", "degree", "betti", "q_plus", "q_minus"])?;
    for c in &r.results {
        for (i, b) in c.betti.iter().enumerate() {
            let q = |v: Option<&Vec<usize>>| v.map(|v| v[i].to_string()).unwrap_or_default();
            csv.write_record([
                c.class.display.clone(),
                i.to_string(),
                b.to_string(),
                q(c.torsion.as_ref().map(|t| &t.plus)),
                q(c.torsion.as_ref().map(|t| &t.minus)),
            ])?;
        }
    }
    csv.flush().map_err(|e| CliError::io("csv", e))?;
    Ok(())
}
