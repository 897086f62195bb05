use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// `a:b:n`, `n` evenly spaced values from `a` to `b` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| {
            if self.count == 1 {
                self.start
            } else {
                self.start + (self.end - self.start) * i as f64 / (self.count - 1) as f64
            }
        })
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("expected start:end:count, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().ok().filter(|v| v.is_finite());
        let (Some(start), Some(end)) = (num(a), num(b)) else {
            return Err(format!("bad range bounds in {s:?}"));
        };
        let count = n
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("bad point count in {s:?}"))?;
        if count == 0 {
            return Err("point count must be at least 1".into());
        }
        Ok(Self { start, end, count })
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.count)
    }
}

/// Initial data for `pde-run`.
#[derive(Clone, Debug, PartialEq)]
pub enum InitSpec {
    Soliton { c: f64, x0: Option<f64> },
    Cnoidal { k: f64, c: f64 },
    File(PathBuf),
}

fn keyed(body: &str) -> Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    for item in body.split(',').filter(|t| !t.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| format!("bad number in {item:?}"))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn take(map: &mut BTreeMap<String, f64>, key: &str) -> Option<f64> {
    map.remove(key)
}

impl FromStr for InitSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        let spec = match kind {
            "file" if !body.is_empty() => return Ok(InitSpec::File(PathBuf::from(body))),
            "soliton" => {
                let mut m = keyed(body)?;
                let c = take(&mut m, "c").ok_or("soliton needs c=<speed>")?;
                let x0 = take(&mut m, "x0");
                (InitSpec::Soliton { c, x0 }, m)
            }
            "cnoidal" => {
                let mut m = keyed(body)?;
                let k = take(&mut m, "k").ok_or("cnoidal needs k=<modulus>")?;
                let c = take(&mut m, "c").unwrap_or(0.0);
                (InitSpec::Cnoidal { k, c }, m)
            }
            _ => {
                return Err(format!(
                    "unknown initial condition {s:?}; use soliton:c=..|cnoidal:k=..|file:<path>"
                ))
            }
        };
        match spec.1.keys().next() {
            Some(extra) => Err(format!("unknown key {extra:?} in {s:?}")),
            None => Ok(spec.0),
        }
    }
}

impl fmt::Display for InitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitSpec::Soliton { c, x0: Some(x0) } => write!(f, "soliton:c={c},x0={x0}"),
            InitSpec::Soliton { c, x0: None } => write!(f, "soliton:c={c}"),
            InitSpec::Cnoidal { k, c } => write!(f, "cnoidal:k={k},c={c}"),
            InitSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Comma-separated finite reals.
pub fn real_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("bad number {t:?}"))
        })
        .collect()
}
