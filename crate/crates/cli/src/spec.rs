//! `--gen name:key=val,...` generator specs and `--config` files.

use std::collections::BTreeMap;
use std::fmt;

use happylab::generators::{
    gen_appendix_c, gen_gap_instance, gen_random, random_hypergraph, Hypergraph, HypergraphSpec, RandomSpec,
};
use happylab::rational::parse_rational;
use happylab::{Error, Instance, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

const KNOWN: &[(&str, &[&str])] = &[
    ("gap", &["k", "wt", "wb"]),
    ("rand", &["n", "k", "p", "wlo", "whi", "wden", "ppl", "seed", "connected"]),
    ("appxc", &["W", "eps", "contracted"]),
    ("hyper", &["n", "m", "k", "size", "wlo", "whi", "seed"]),
];

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

impl GenSpec {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut params = BTreeMap::new();
        for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair.split_once('=').ok_or_else(|| bad(format!("expected key=value, found '{pair}'")))?;
            params.insert(key.trim().to_string(), value.trim().to_string());
        }
        Self::checked(name.trim().to_string(), params)
    }

    /// Flat `key = value` lines; `gen` names the generator, `#` starts a comment.
    pub fn parse_config(text: &str) -> Result<Self, Error> {
        let mut params = BTreeMap::new();
        let mut name = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: idx + 1, msg: "expected key = value".into() })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "gen" {
                name = Some(value.to_string());
            } else {
                params.insert(key.to_string(), value.to_string());
            }
        }
        let name = name.ok_or_else(|| bad("config file needs a 'gen = <name>' line"))?;
        Self::checked(name, params)
    }

    fn checked(name: String, params: BTreeMap<String, String>) -> Result<Self, Error> {
        let keys = KNOWN
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, keys)| *keys)
            .ok_or_else(|| bad(format!("unknown generator '{name}' (gap, rand, appxc, hyper)")))?;
        if let Some(key) = params.keys().find(|k| !keys.contains(&k.as_str())) {
            return Err(bad(format!("generator '{name}' has no parameter '{key}'")));
        }
        Ok(Self { name, params })
    }

    /// Keys from `other` win.
    pub fn merged(mut self, other: GenSpec) -> Result<Self, Error> {
        if self.name != other.name {
            return Err(bad(format!("--gen '{}' conflicts with config generator '{}'", other.name, self.name)));
        }
        self.params.extend(other.params);
        Ok(self)
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, Error> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| bad(format!("bad value '{v}' for '{key}'"))),
        }
    }

    fn rational(&self, key: &str, default: i64) -> Result<Rational, Error> {
        match self.params.get(key) {
            None => Ok(Rational::from_integer(default.into())),
            Some(v) => parse_rational(v).ok_or_else(|| bad(format!("bad rational '{v}' for '{key}'"))),
        }
    }

    fn flag(&self, key: &str) -> Result<bool, Error> {
        match self.params.get(key).map(String::as_str) {
            None | Some("0") | Some("false") => Ok(false),
            Some("1") | Some("true") => Ok(true),
            Some(v) => Err(bad(format!("bad flag '{v}' for '{key}'"))),
        }
    }

    pub fn is_hypergraph(&self) -> bool {
        self.name == "hyper"
    }

    /// `seed` is used when the spec does not set its own.
    pub fn instance(&self, seed: u64) -> Result<Instance, Error> {
        match self.name.as_str() {
            "gap" => gen_gap_instance(self.get("k", 3)?, self.rational("wt", 1)?, self.rational("wb", 0)?),
            "appxc" => {
                let (original, contracted) = gen_appendix_c(self.rational("W", 10)?, self.rational("eps", 1)?)?;
                Ok(if self.flag("contracted")? { contracted } else { original })
            }
            "rand" => {
                let d = RandomSpec::default();
                gen_random(&RandomSpec {
                    num_vertices: self.get("n", d.num_vertices)?,
                    num_labels: self.get("k", d.num_labels)?,
                    edge_probability: self.get("p", d.edge_probability)?,
                    weight_low: self.get("wlo", d.weight_low)?,
                    weight_high: self.get("whi", d.weight_high)?,
                    weight_denominator: self.get("wden", d.weight_denominator)?,
                    precolored_per_label: self.get("ppl", d.precolored_per_label)?,
                    seed: self.get("seed", seed)?,
                    connected: self.flag("connected")?,
                })
            }
            "hyper" => Err(bad("'hyper' generates a hypergraph; reduce it first")),
            other => Err(bad(format!("unknown generator '{other}'"))),
        }
    }

    pub fn hypergraph(&self, seed: u64) -> Result<Hypergraph, Error> {
        if !self.is_hypergraph() {
            return Err(bad(format!("'{}' does not generate a hypergraph", self.name)));
        }
        let d = HypergraphSpec::default();
        random_hypergraph(&HypergraphSpec {
            num_vertices: self.get("n", d.num_vertices)?,
            num_hyperedges: self.get("m", d.num_hyperedges)?,
            num_terminals: self.get("k", d.num_terminals)?,
            max_size: self.get("size", d.max_size)?,
            weight_low: self.get("wlo", d.weight_low)?,
            weight_high: self.get("whi", d.weight_high)?,
            seed: self.get("seed", seed)?,
        })
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (i, (key, value)) in self.params.iter().enumerate() {
            write!(f, "{}{key}={value}", if i == 0 { ":" } else { "," })?;
        }
        Ok(())
    }
}
