//! Fixture files shared by the integration tests.

#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SYDNEY_SERVICE: &str = r#"{
  "name": "sydney-24h-rain",
  "severity": {
    "labels": ["MIN", "MOD+", "SEV+", "EXT"],
    "units": "mm",
    "thresholds": [100, 150, 200]
  },
  "certainty": {
    "labels": ["unlikely", "possible", "likely", "very likely"],
    "thresholds": [0.1, 0.4, 0.7]
  },
  "levels": { "labels": ["Nil", "Yellow Warning", "Orange Warning", "Red Warning"] },
  "phases": [
    { "name": "SHORT-RANGE", "min_lead_hours": 0,
      "scaling": {
        "MOD+": ["Nil", "Yellow Warning", "Yellow Warning", "Orange Warning"],
        "SEV+": ["Nil", "Yellow Warning", "Orange Warning", "Red Warning"],
        "EXT": ["Nil", "Orange Warning", "Red Warning", "Red Warning"]
      } }
  ],
  "evaluation_weights": [1, 2, 3]
}
"#;

/// Three warning phases with a NIL STATE beyond 72 h and per-location thresholds.
pub const PHASED_SERVICE: &str = r#"{
  "name": "rain-three-phase",
  "severity": {
    "labels": ["MIN", "MOD+", "SEV+", "EXT"],
    "units": "mm",
    "thresholds": [100, 150, 200],
    "location_thresholds": "locations.csv"
  },
  "certainty": {
    "labels": ["unlikely", "possible", "likely", "very likely"],
    "thresholds": [0.1, 0.4, 0.7]
  },
  "levels": { "labels": ["Nil", "Yellow Warning", "Orange Warning", "Red Warning"] },
  "phases": [
    { "name": "NIL STATE", "min_lead_hours": 72 },
    { "name": "LONG-RANGE", "min_lead_hours": 48,
      "scaling": { "MOD+": [0, 1, 1, 1], "SEV+": [0, 1, 1, 1], "EXT": [0, 1, 1, 1] } },
    { "name": "MID-RANGE", "min_lead_hours": 24,
      "scaling": { "MOD+": [0, 1, 1, 1], "SEV+": [0, 1, 2, 2], "EXT": [0, 1, 2, 3] } },
    { "name": "SHORT-RANGE", "min_lead_hours": 0,
      "scaling": { "MOD+": [0, 1, 1, 2], "SEV+": [0, 1, 2, 3], "EXT": [0, 2, 3, 3] } }
  ],
  "evaluation_weights": [1, 2, 3]
}
"#;

pub const CASE_HEADER: &str = "case_id,location_id,lead_hours,prob_tuple,det_value,ens_members,obs_value,obs_index\n";

pub const LEADS: [f64; 4] = [6.0, 30.0, 54.0, 80.0];

/// Thresholds `t_1 < t_2 < t_3` for location `loc01..loc10`.
pub fn location_thresholds(k: usize) -> [f64; 3] {
    let k = k as f64;
    [60.0 + 10.0 * k, 90.0 + 15.0 * k, 120.0 + 20.0 * k]
}

pub struct Fixture {
    pub dir: tempfile::TempDir,
    pub service: PathBuf,
    /// Mixed probability / deterministic / ensemble source.
    pub blend: PathBuf,
    /// Deterministic-only source over the same cases.
    pub det: PathBuf,
    /// Partition index of each case's observation, in case order.
    pub outcomes: Vec<usize>,
    pub case_ids: Vec<String>,
}

fn partition(y: f64, t: &[f64; 3]) -> usize {
    t.iter().filter(|&&x| y >= x).count()
}

/// Ten locations, four lead times, seeded pseudo-random inputs.
pub fn ten_location_fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let service = dir.path().join("service.json");
    std::fs::write(&service, PHASED_SERVICE).unwrap();

    let mut locs = String::from("location_id,t1,t2,t3\n");
    for k in 1..=10 {
        let t = location_thresholds(k);
        writeln!(locs, "loc{k:02},{},{},{}", t[0], t[1], t[2]).unwrap();
    }
    std::fs::write(dir.path().join("locations.csv"), locs).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut blend = String::from(CASE_HEADER);
    let mut det = String::from(CASE_HEADER);
    let mut outcomes = Vec::new();
    let mut case_ids = Vec::new();
    let mut n = 0;
    for k in 1..=10 {
        let t = location_thresholds(k);
        for lead in LEADS {
            n += 1;
            let id = format!("c{n:03}");
            let y: f64 = rng.random_range(0.0..2.2 * t[2]);
            let centre = y + rng.random_range(-40.0..40.0);
            // even cases report the raw value, odd cases the partition index
            let obs = if n % 2 == 0 {
                format!("{y:.1},")
            } else {
                format!(",{}", partition((y * 10.0).round() / 10.0, &t))
            };
            outcomes.push(partition((y * 10.0).round() / 10.0, &t));
            case_ids.push(id.clone());
            let form = match n % 3 {
                0 => {
                    let p1: f64 = rng.random_range(0.0..1.0);
                    let p2 = p1 * rng.random_range(0.0..1.0);
                    let p3 = p2 * rng.random_range(0.0..1.0);
                    format!("{p1:.3};{p2:.3};{p3:.3},,")
                }
                1 => format!(",{centre:.1},"),
                _ => {
                    let members: Vec<String> = (0..11)
                        .map(|_| format!("{:.1}", (centre + rng.random_range(-50.0..50.0)).max(0.0)))
                        .collect();
                    format!(",,{}", members.join(";"))
                }
            };
            writeln!(blend, "{id},loc{k:02},{lead},{form},{obs}").unwrap();
            writeln!(det, "{id},loc{k:02},{lead},,{:.1},,{obs}", (centre - 15.0).max(0.0)).unwrap();
        }
    }
    let blend_path = dir.path().join("blend.csv");
    let det_path = dir.path().join("det.csv");
    std::fs::write(&blend_path, blend).unwrap();
    std::fs::write(&det_path, det).unwrap();
    Fixture {
        dir,
        service,
        blend: blend_path,
        det: det_path,
        outcomes,
        case_ids,
    }
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riskmatrix")).args(args).output().unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}
