//! Flat `key = value` config files and the merged settings.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(format!("unknown format {s:?} (csv, json, md)")),
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub const KEYS: &[&str] = &[
    "format",
    "order",
    "precision",
    "terms",
    "threads",
    "family_max",
    "modulus",
    "ratio",
    "xmin",
    "xmax",
];

/// Parsed config file: later lines override earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigFile {
    pub values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(src: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (n, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(ConfigError(format!("line {}: unknown key {k:?}", n + 1)));
            }
            if v.is_empty() {
                return Err(ConfigError(format!("line {}: empty value for {k}", n + 1)));
            }
            values.insert(k.to_string(), v.to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let src = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::parse(&src)
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| ConfigError(format!("{key} = {v}: {e}"))))
            .transpose()
    }
}

/// Effective settings after `flags > config file > defaults`.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub format: Format,
    pub order: usize,
    pub precision: u32,
    pub terms: usize,
    pub threads: Option<usize>,
    pub family_max: i64,
    pub modulus: Option<u64>,
    pub ratio: Option<String>,
    pub xmin: Option<u64>,
    pub xmax: Option<u64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            format: Format::Csv,
            order: rank3::sieve::DEFAULT_ORDER,
            precision: rank3::smatrix::DEFAULT_PRECISION,
            terms: rank3::smatrix::DEFAULT_TERMS,
            threads: None,
            family_max: 40,
            modulus: None,
            ratio: None,
            xmin: None,
            xmax: None,
        }
    }
}

/// Values given on the command line; `None` falls through to the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub order: Option<usize>,
    pub precision: Option<u32>,
    pub terms: Option<usize>,
    pub threads: Option<usize>,
    pub family_max: Option<i64>,
    pub modulus: Option<u64>,
    pub ratio: Option<String>,
    pub xmin: Option<u64>,
    pub xmax: Option<u64>,
}

impl Settings {
    pub fn resolve(file: &ConfigFile, flags: &Overrides) -> Result<Self, ConfigError> {
        let d = Settings::default();
        let s = Settings {
            format: flags.format.or(file.get("format")?).unwrap_or(d.format),
            order: flags.order.or(file.get("order")?).unwrap_or(d.order),
            precision: flags.precision.or(file.get("precision")?).unwrap_or(d.precision),
            terms: flags.terms.or(file.get("terms")?).unwrap_or(d.terms),
            threads: flags.threads.or(file.get("threads")?),
            family_max: flags.family_max.or(file.get("family_max")?).unwrap_or(d.family_max),
            modulus: flags.modulus.or(file.get("modulus")?),
            ratio: flags.ratio.clone().or(file.get("ratio")?),
            xmin: flags.xmin.or(file.get("xmin")?),
            xmax: flags.xmax.or(file.get("xmax")?),
        };
        if s.order == 0 {
            return Err(ConfigError("order must be positive".into()));
        }
        if s.terms < 12 {
            return Err(ConfigError("terms must be at least 12".into()));
        }
        if !(64..=4096).contains(&s.precision) {
            return Err(ConfigError("precision must lie in 64..=4096".into()));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_precedence() {
        let file = ConfigFile::parse("# run settings\norder = 200\nformat=json\n\nprecision = 128 # bits\n").unwrap();
        let flags = Overrides { order: Some(50), ..Default::default() };
        let s = Settings::resolve(&file, &flags).unwrap();
        assert_eq!(s.order, 50);
        assert_eq!(s.format, Format::Json);
        assert_eq!(s.precision, 128);
        assert_eq!(s.terms, rank3::smatrix::DEFAULT_TERMS);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(ConfigFile::parse("order 200").is_err());
        assert!(ConfigFile::parse("colour = red").is_err());
        let file = ConfigFile::parse("order = many").unwrap();
        assert!(Settings::resolve(&file, &Overrides::default()).is_err());
    }
}
