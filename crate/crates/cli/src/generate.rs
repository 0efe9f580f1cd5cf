//! `--generate` specifications: a generator name followed by `key=value`
//! parameters, e.g. `complete n=5 d=2` or `lm n=12 d=2 p=0.5`.

use std::collections::BTreeMap;

use cheeger_core::random::{linial_meshulam, LmParams};
use cheeger_core::{fixtures, SimplicialComplex};

use crate::CliError;

pub const GENERATORS: &str =
    "complete n= d= | lm n= d= p= | mobius | bowtie | cycle n= | path n= | sphere-pendant d= | disjoint-triangles count=";

struct Spec<'a> {
    name: &'a str,
    params: BTreeMap<&'a str, &'a str>,
}

impl<'a> Spec<'a> {
    fn parse(text: &'a str) -> Result<Self, CliError> {
        let mut tokens = text.split_whitespace();
        let name = tokens
            .next()
            .ok_or_else(|| CliError::Usage(format!("empty generator; expected one of: {GENERATORS}")))?;
        let mut params = BTreeMap::new();
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("generator parameter `{tok}` is not key=value")))?;
            if params.insert(k, v).is_some() {
                return Err(CliError::Usage(format!("generator parameter `{k}` given twice")));
            }
        }
        Ok(Spec { name, params })
    }

    fn take<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, CliError> {
        let raw = self
            .params
            .remove(key)
            .ok_or_else(|| CliError::Usage(format!("generator `{}` needs {key}=", self.name)))?;
        raw.parse()
            .map_err(|_| CliError::Usage(format!("cannot parse {key}={raw} for generator `{}`", self.name)))
    }

    fn finish(self) -> Result<(), CliError> {
        match self.params.keys().next() {
            Some(k) => Err(CliError::Usage(format!("unknown parameter `{k}` for generator `{}`", self.name))),
            None => Ok(()),
        }
    }
}

/// Builds the complex named by `text`; `lm` draws from `seed`.
pub fn generate(text: &str, seed: u64) -> Result<SimplicialComplex, CliError> {
    let mut spec = Spec::parse(text)?;
    let x = match spec.name {
        "complete" => {
            let n = spec.take("n")?;
            let d = spec.take("d")?;
            SimplicialComplex::complete(n, d)?
        }
        "lm" => {
            let n = spec.take("n")?;
            let d = spec.take("d")?;
            let p = spec.take("p")?;
            linial_meshulam(&LmParams::new(d, n, p, seed)?)?
        }
        "mobius" => fixtures::mobius(),
        "bowtie" => fixtures::bowtie(),
        "cycle" => {
            let n: usize = spec.take("n")?;
            if n < 3 {
                return Err(CliError::Usage("cycle needs n >= 3".into()));
            }
            fixtures::cycle_graph(n)
        }
        "path" => {
            let n: usize = spec.take("n")?;
            if n < 2 {
                return Err(CliError::Usage("path needs n >= 2".into()));
            }
            fixtures::path_graph(n)
        }
        "sphere-pendant" => {
            let d: usize = spec.take("d")?;
            if !(2..=3).contains(&d) {
                return Err(CliError::Usage("sphere-pendant needs d = 2 or 3".into()));
            }
            fixtures::sphere_with_pendant(d)
        }
        "disjoint-triangles" => {
            let count: usize = spec.take("count")?;
            fixtures::disjoint_triangles(count)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown generator `{other}`; expected one of: {GENERATORS}"
            )))
        }
    };
    spec.finish()?;
    Ok(x)
}
