//! Plain `key=value` configuration files. Each key names a long flag of
//! the chosen subcommand; values given on the command line win.

use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Parses `key=value` lines. Blank lines and `#` comments (whole-line or
/// trailing) are skipped; whitespace around keys and values is trimmed.
pub fn parse(text: &str) -> Result<Vec<Entry>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value, got {raw:?}", i + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        out.push(Entry {
            key: key.to_string(),
            value: value.trim().to_string(),
            line: i + 1,
        });
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<Entry>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text)
}

/// Command-line form of the entries. `flag=true` becomes a bare switch and
/// `flag=false` is dropped for the names in `switches`.
pub fn to_args(entries: &[Entry], switches: &[&str]) -> Result<Vec<String>, CliError> {
    let mut args = Vec::new();
    for e in entries {
        if e.key == "config" {
            return Err(CliError::Usage(format!(
                "config line {}: nested config files are not supported",
                e.line
            )));
        }
        if switches.contains(&e.key.as_str()) {
            match e.value.as_str() {
                "true" | "1" | "yes" | "" => args.push(format!("--{}", e.key)),
                "false" | "0" | "no" => {}
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {}: {} expects true or false, got {other:?}",
                        e.line, e.key
                    )))
                }
            }
        } else {
            args.push(format!("--{}={}", e.key, e.value));
        }
    }
    Ok(args)
}

/// Locates `--config <path>` or `--config=<path>` in raw arguments.
pub fn find_config_flag(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_spacing() {
        let text = "# sweep campaign\nmu = 1\n\nnu-min=0.5  # lower edge\n--steps=11\njson=true\n";
        let e = parse(text).unwrap();
        let kv: Vec<_> = e.iter().map(|e| (e.key.as_str(), e.value.as_str())).collect();
        assert_eq!(kv, [("mu", "1"), ("nu-min", "0.5"), ("steps", "11"), ("json", "true")]);
        assert_eq!(e[1].line, 4);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(parse("mu 1"), Err(CliError::Usage(_))));
        assert!(matches!(parse("=1"), Err(CliError::Usage(_))));
    }

    #[test]
    fn switches_and_values() {
        let e = parse("json=true\nmu=2\nfoo=false").unwrap();
        let args = to_args(&e, &["json", "foo"]).unwrap();
        assert_eq!(args, ["--json", "--mu=2"]);
        assert!(to_args(&parse("json=maybe").unwrap(), &["json"]).is_err());
        assert!(to_args(&parse("config=x").unwrap(), &[]).is_err());
    }

    #[test]
    fn finds_config_flag() {
        let a = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(find_config_flag(&a(&["x", "--config", "c.txt"])), Some("c.txt".into()));
        assert_eq!(find_config_flag(&a(&["--config=d.txt"])), Some("d.txt".into()));
        assert_eq!(find_config_flag(&a(&["bounds", "--mu", "1"])), None);
    }
}
