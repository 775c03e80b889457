//! Key=value config files and flag resolution. Flags win over config values;
//! config keys a command does not use are ignored.

use crate::CliError;
use std::collections::HashMap;
use std::path::PathBuf;

#[derive(Debug, Default)]
pub struct ConfigMap {
    values: HashMap<String, String>,
}

impl ConfigMap {
    pub fn load(path: Option<&PathBuf>) -> Result<Self, CliError> {
        let mut values = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            for (line_no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(CliError::Usage(format!(
                        "config line {} is not key=value: '{line}'",
                        line_no + 1
                    )));
                };
                values.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag value if present, else the config value parsed with `parse`,
    /// else `default`.
    pub fn resolve<T, F>(
        &self,
        flag: Option<T>,
        key: &str,
        parse: F,
        default: T,
    ) -> Result<T, CliError>
    where
        F: Fn(&str) -> Result<T, CliError>,
    {
        match flag {
            Some(v) => Ok(v),
            None => match self.get(key) {
                Some(raw) => parse(raw),
                None => Ok(default),
            },
        }
    }

    /// Like [`ConfigMap::resolve`] but without a default: the value must come
    /// from a flag or the config file.
    pub fn resolve_required<T, F>(
        &self,
        flag: Option<T>,
        key: &str,
        parse: F,
    ) -> Result<T, CliError>
    where
        F: Fn(&str) -> Result<T, CliError>,
    {
        match flag {
            Some(v) => Ok(v),
            None => match self.get(key) {
                Some(raw) => parse(raw),
                None => Err(CliError::Usage(format!(
                    "missing required value '{key}' (flag or config)"
                ))),
            },
        }
    }
}

/// Parses an angle: a plain float or a `pi` expression such as `pi`, `-pi`,
/// `pi/2`, `2pi`, `1.5pi/4`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let t = s.trim().to_ascii_lowercase();
    if let Ok(v) = t.parse::<f64>() {
        if v.is_finite() {
            return Ok(v);
        }
        return Err(CliError::Usage(format!("angle '{s}' is not finite")));
    }
    let Some(idx) = t.find("pi") else {
        return Err(CliError::Usage(format!("cannot parse angle '{s}'")));
    };
    let coefficient = match &t[..idx] {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("cannot parse angle '{s}'")))?,
    };
    let divisor = match &t[idx + 2..] {
        "" => 1.0,
        rest => {
            let Some(d) = rest.strip_prefix('/') else {
                return Err(CliError::Usage(format!("cannot parse angle '{s}'")));
            };
            let d = d
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse angle '{s}'")))?;
            if d == 0.0 || !d.is_finite() {
                return Err(CliError::Usage(format!("bad divisor in angle '{s}'")));
            }
            d
        }
    };
    Ok(coefficient * std::f64::consts::PI / divisor)
}

pub fn parse_f64(s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("cannot parse number '{s}'")))
}

pub fn parse_u64(s: &str) -> Result<u64, CliError> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| CliError::Usage(format!("cannot parse integer '{s}'")))
}

pub fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| CliError::Usage(format!("cannot parse integer '{s}'")))
}

/// Comma-separated list parsed element-wise.
pub fn parse_list<T, F>(s: &str, parse: F) -> Result<Vec<T>, CliError>
where
    F: Fn(&str) -> Result<T, CliError>,
{
    let items: Result<Vec<T>, CliError> = s.split(',').map(parse).collect();
    let items = items?;
    if items.is_empty() {
        return Err(CliError::Usage(format!("empty list '{s}'")));
    }
    Ok(items)
}
