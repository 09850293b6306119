//! The subprocess adapter and its wire protocol: newline-delimited JSON
//! over the child's standard input and output.
//!
//! ```text
//! > {"id":1,"function":"atanh","precision":23,"input":[{"type":"interval",...}]}
//! < {"id":1,"status":"ok","value":{"type":"interval",...}}
//! < {"id":1,"status":"unsupported"}
//! < {"id":1,"status":"error","detail":"..."}
//! ```

use std::io::{self, BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use serde_json::{json, Map, Value};

use super::{Adapter, Request, Response};
use crate::suite::{value_from_json, value_to_json, FormatHint};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

struct Running {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<io::Result<String>>,
}

impl Running {
    fn spawn(argv: &[String]) -> io::Result<Self> {
        let (program, args) = argv.split_first().ok_or_else(|| io::Error::other("empty command"))?;
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, lines) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(Running { child, stdin, lines })
    }
}

impl Drop for Running {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// Talks to an external implementation. The child is started on first use
/// and restarted after a crash or timeout; calls are serialized.
pub struct SubprocessAdapter {
    argv: Vec<String>,
    timeout: Duration,
    state: Mutex<(u64, Option<Running>)>,
}

impl SubprocessAdapter {
    pub fn new(argv: Vec<String>, timeout: Duration) -> Self {
        SubprocessAdapter { argv, timeout, state: Mutex::new((0, None)) }
    }
}

impl Adapter for SubprocessAdapter {
    fn identity(&self) -> String {
        format!("cmd:{}", self.argv.join(" "))
    }

    fn is_serial(&self) -> bool {
        true
    }

    fn call(&self, request: &Request) -> Response {
        let mut state = self.state.lock().unwrap_or_else(|e| e.into_inner());
        state.0 += 1;
        let id = state.0;
        if state.1.is_none() {
            match Running::spawn(&self.argv) {
                Ok(r) => state.1 = Some(r),
                Err(e) => return Response::Error(format!("cannot start {}: {e}", self.argv.join(" "))),
            }
        }
        let running = state.1.as_mut().unwrap();
        let mut line = request_json(id, request).to_string();
        line.push('\n');
        if running.stdin.write_all(line.as_bytes()).and_then(|_| running.stdin.flush()).is_err() {
            state.1 = None;
            return Response::Error("process exited".to_string());
        }
        let reply = running.lines.recv_timeout(self.timeout);
        match reply {
            Ok(Ok(text)) => parse_response(id, &text),
            Ok(Err(e)) => {
                state.1 = None;
                Response::Error(format!("read failed: {e}"))
            }
            Err(RecvTimeoutError::Timeout) => {
                state.1 = None;
                Response::Error(format!("timeout after {:?}", self.timeout))
            }
            Err(RecvTimeoutError::Disconnected) => {
                state.1 = None;
                Response::Error("process exited".to_string())
            }
        }
    }
}

fn request_json(id: u64, r: &Request) -> Value {
    let format = r.format();
    let mut m = Map::new();
    m.insert("id".into(), id.into());
    m.insert("function".into(), r.function.clone().into());
    m.insert("precision".into(), r.precision.into());
    if let Some(h) = r.format_hint {
        m.insert("format_hint".into(), h.name().into());
    }
    m.insert("input".into(), r.input.iter().map(|v| value_to_json(v, format)).collect());
    Value::Object(m)
}

fn parse_response(id: u64, text: &str) -> Response {
    let malformed = |why: &str| Response::Error(format!("malformed response: {why}"));
    let Ok(Value::Object(obj)) = serde_json::from_str::<Value>(text) else {
        return malformed("not a JSON object");
    };
    if obj.get("id").and_then(Value::as_u64) != Some(id) {
        return malformed("id mismatch");
    }
    match obj.get("status").and_then(Value::as_str) {
        Some("ok") => match obj.get("value").map(|v| value_from_json(v, "value")) {
            Some(Ok(v)) => Response::Value(v),
            Some(Err(e)) => malformed(&e),
            None => malformed("value required"),
        },
        Some("unsupported") => Response::Unsupported,
        Some("error") => Response::Error(obj.get("detail").and_then(Value::as_str).unwrap_or("").to_string()),
        _ => malformed("unknown status"),
    }
}

/// Serves the protocol with `adapter` until `input` ends. Requests that do
/// not parse get an error response with the id when one can be recovered.
pub fn serve(adapter: &dyn Adapter, input: impl BufRead, mut output: impl Write) -> io::Result<()> {
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let reply = match parse_request(&line) {
            Ok((id, req)) => match adapter.call(&req) {
                Response::Value(v) => json!({"id": id, "status": "ok", "value": value_to_json(&v, req.format())}),
                Response::Unsupported => json!({"id": id, "status": "unsupported"}),
                Response::Error(e) => json!({"id": id, "status": "error", "detail": e}),
            },
            Err((id, e)) => json!({"id": id, "status": "error", "detail": e}),
        };
        writeln!(output, "{reply}")?;
        output.flush()?;
    }
    Ok(())
}

fn parse_request(line: &str) -> Result<(Value, Request), (Value, String)> {
    let v: Value = serde_json::from_str(line).map_err(|e| (Value::Null, format!("bad request: {e}")))?;
    let id = v.get("id").cloned().unwrap_or(Value::Null);
    let err = |m: String| (id.clone(), m);
    let function = v.get("function").and_then(Value::as_str).ok_or_else(|| err("function required".into()))?;
    let precision = v
        .get("precision")
        .and_then(Value::as_u64)
        .and_then(|p| u32::try_from(p).ok())
        .ok_or_else(|| err("precision required".into()))?;
    let format_hint = match v.get("format_hint").and_then(Value::as_str) {
        Some(h) => Some(FormatHint::from_name(h).ok_or_else(|| err(format!("unknown format_hint {h:?}")))?),
        None => None,
    };
    let input = v
        .get("input")
        .and_then(Value::as_array)
        .ok_or_else(|| err("input required".into()))?
        .iter()
        .enumerate()
        .map(|(i, x)| value_from_json(x, &format!("input[{i}]")))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok((id, Request { function: function.to_string(), precision, format_hint, input }))
}
