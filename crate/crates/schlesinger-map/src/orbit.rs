use fuchsian_core::io::{matrix_to_pairs, pair, to_json_string, Pair, SchemeJson};
use fuchsian_core::{default_labels, riemann_scheme, FuchsianSystem, RiemannScheme, Tolerances, C64};
use serde::Serialize;

use crate::error::SchlesingerError;
use crate::index::TransformationIndex;
use crate::transform::transform_system_labelled;

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRecord {
    pub step: usize,
    pub system: FuchsianSystem,
    /// Nonzero indices per pole in slot order (the order schedule slots refer to).
    pub labels: Vec<Vec<C64>>,
    pub scheme: RiemannScheme,
}

/// Records up to the first failure, plus the failure tagged with its step.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitOutcome {
    pub records: Vec<OrbitRecord>,
    pub halt: Option<SchlesingerError>,
}

/// Applies the schedule cyclically `steps` times. Record 0 is the input.
pub fn orbit_partial(
    system: &FuchsianSystem,
    schedule: &[TransformationIndex],
    steps: usize,
    tol: &Tolerances,
) -> OrbitOutcome {
    let start = default_labels(system, tol.cluster)
        .map_err(SchlesingerError::from)
        .and_then(|labels| Ok((riemann_scheme(system, tol.cluster)?, labels)));
    let (scheme, labels) = match start {
        Ok(x) => x,
        Err(e) => {
            return OrbitOutcome {
                records: vec![],
                halt: Some(tag(0, e)),
            }
        }
    };
    let mut records = vec![OrbitRecord {
        step: 0,
        system: system.clone(),
        labels,
        scheme,
    }];
    if steps > 0 && schedule.is_empty() {
        let e = SchlesingerError::InvalidIndex("empty schedule".into());
        return OrbitOutcome {
            records,
            halt: Some(tag(1, e)),
        };
    }
    for step in 1..=steps {
        let idx = &schedule[(step - 1) % schedule.len()];
        let prev = records.last().expect("nonempty");
        let next = transform_system_labelled(&prev.system, &prev.labels, idx, tol).and_then(|(s, labels, _)| {
            let scheme = riemann_scheme(&s, tol.cluster)?;
            Ok(OrbitRecord {
                step,
                system: s,
                labels,
                scheme,
            })
        });
        match next {
            Ok(r) => records.push(r),
            Err(e) => {
                return OrbitOutcome {
                    records,
                    halt: Some(tag(step, e)),
                }
            }
        }
    }
    OrbitOutcome { records, halt: None }
}

fn tag(step: usize, e: SchlesingerError) -> SchlesingerError {
    SchlesingerError::Step {
        step,
        source: Box::new(e),
    }
}

pub fn orbit(
    system: &FuchsianSystem,
    schedule: &[TransformationIndex],
    steps: usize,
) -> Result<Vec<OrbitRecord>, SchlesingerError> {
    let out = orbit_partial(system, schedule, steps, &Tolerances::default());
    match out.halt {
        Some(e) => Err(e),
        None => Ok(out.records),
    }
}

#[derive(Serialize)]
struct TraceRecord {
    step: usize,
    matrix_size: usize,
    poles: Vec<Pair>,
    residues: Vec<Vec<Vec<Pair>>>,
    riemann_scheme: SchemeJson,
}

impl From<&OrbitRecord> for TraceRecord {
    fn from(r: &OrbitRecord) -> Self {
        TraceRecord {
            step: r.step,
            matrix_size: r.system.matrix_size(),
            poles: r.system.poles().iter().copied().map(pair).collect(),
            residues: r.system.residues().iter().map(matrix_to_pairs).collect(),
            riemann_scheme: SchemeJson {
                finite: r.labels.iter().map(|t| t.iter().copied().map(pair).collect()).collect(),
                infinity: r.scheme.infinity.iter().copied().map(pair).collect(),
            },
        }
    }
}

/// JSON array of per-step records; finite indices are listed in slot order.
pub fn trace_json(records: &[OrbitRecord]) -> String {
    let rows: Vec<TraceRecord> = records.iter().map(TraceRecord::from).collect();
    to_json_string(&rows)
}
