//! HttpProvider against a scripted local server.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use tseoh_evolve::prompt::Message;
use tseoh_evolve::provider::CompletionRequest;
use tseoh_evolve::{HttpConfig, HttpProvider, Provider, ProviderError, Strategy};

struct Served {
    requests: Vec<String>,
}

/// Answers one connection per scripted `(status, body)` and keeps counting
/// any further connections for a short grace period.
fn serve(script: Vec<(u16, String)>) -> (String, Arc<Mutex<Served>>, thread::JoinHandle<usize>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/v1", listener.local_addr().unwrap());
    let served = Arc::new(Mutex::new(Served { requests: vec![] }));
    let log = served.clone();
    listener.set_nonblocking(true).unwrap();
    let handle = thread::spawn(move || {
        let mut script = script.into_iter();
        let mut connections = 0;
        let mut deadline = Instant::now() + Duration::from_secs(10);
        loop {
            match listener.accept() {
                Ok((stream, _)) => {
                    connections += 1;
                    stream.set_nonblocking(false).unwrap();
                    let mut reader = BufReader::new(stream.try_clone().unwrap());
                    let mut head = String::new();
                    let mut len = 0;
                    loop {
                        let mut line = String::new();
                        reader.read_line(&mut line).unwrap();
                        if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                            len = v.trim().parse().unwrap();
                        }
                        head.push_str(&line);
                        if line == "\r\n" || line.is_empty() {
                            break;
                        }
                    }
                    let mut body = vec![0; len];
                    reader.read_exact(&mut body).unwrap();
                    log.lock().unwrap().requests.push(head + &String::from_utf8(body).unwrap());
                    let (status, text) = script.next().unwrap_or((500, "unexpected".into()));
                    let mut s = stream;
                    write!(
                        s,
                        "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{text}",
                        text.len()
                    )
                    .unwrap();
                    s.flush().unwrap();
                    if script.len() == 0 {
                        deadline = Instant::now() + Duration::from_millis(300);
                    }
                }
                Err(e) if e.kind() == std::io::ErrorKind::WouldBlock => {
                    if Instant::now() > deadline {
                        return connections;
                    }
                    thread::sleep(Duration::from_millis(5));
                }
                Err(e) => panic!("{e}"),
            }
        }
    });
    (url, served, handle)
}

fn request() -> CompletionRequest {
    CompletionRequest {
        run_seq: 0,
        strategy: Strategy::Init,
        call_index: 0,
        model: "test-model".into(),
        messages: vec![Message::user("hello")],
        temperature: 1.0,
    }
}

fn config(url: &str) -> HttpConfig {
    HttpConfig { backoff: Duration::from_millis(10), max_attempts: 3, ..HttpConfig::new(url, "secret") }
}

const OK: &str = r#"{"model":"test-model","choices":[{"message":{"role":"assistant","content":"hi there"}}],"usage":{"prompt_tokens":3,"completion_tokens":2}}"#;

#[test]
fn unauthorized_is_not_retried() {
    let (url, served, handle) = serve(vec![(401, r#"{"error":"bad key"}"#.into())]);
    let err = HttpProvider::new(config(&url)).complete(&request()).unwrap_err();
    assert!(matches!(err, ProviderError::Auth { status: 401, .. }), "{err}");
    assert_eq!(handle.join().unwrap(), 1);
    let req = &served.lock().unwrap().requests[0];
    assert!(req.starts_with("POST /v1/chat/completions"), "{req}");
    assert!(req.to_ascii_lowercase().contains("authorization: bearer secret"), "{req}");
}

#[test]
fn server_errors_are_retried_then_succeed() {
    let (url, served, handle) = serve(vec![(500, "boom".into()), (429, "slow down".into()), (200, OK.into())]);
    let c = HttpProvider::new(config(&url)).complete(&request()).unwrap();
    assert_eq!(c.text, "hi there");
    assert_eq!(c.prompt_tokens, Some(3));
    assert_eq!(handle.join().unwrap(), 3);
    let body = served.lock().unwrap().requests[2].clone();
    let json: serde_json::Value = serde_json::from_str(body.split("\r\n\r\n").nth(1).unwrap()).unwrap();
    assert_eq!(json["model"], "test-model");
    assert_eq!(json["messages"][0]["content"], "hello");
}

#[test]
fn retries_stop_at_the_attempt_cap() {
    let (url, _, handle) = serve(vec![(503, "a".into()), (503, "b".into()), (503, "c".into())]);
    let err = HttpProvider::new(config(&url)).complete(&request()).unwrap_err();
    assert_eq!(err.status(), Some(503));
    assert_eq!(handle.join().unwrap(), 3);
}

#[test]
fn client_errors_other_than_auth_fail_fast() {
    let (url, _, handle) = serve(vec![(400, "bad request".into())]);
    let err = HttpProvider::new(config(&url)).complete(&request()).unwrap_err();
    assert!(matches!(err, ProviderError::Http { status: 400, .. }), "{err}");
    assert_eq!(handle.join().unwrap(), 1);
}
