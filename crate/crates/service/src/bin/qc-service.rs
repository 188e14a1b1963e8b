use clap::Parser;
use tokio::net::TcpListener;

#[derive(Parser)]
#[command(about = "HTTP service for weakly-global point computations")]
struct Args {
    #[arg(long, env = "QC_ADDR", default_value = "127.0.0.1:8787")]
    addr: String,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    tracing_subscriber::fmt().with_env_filter(tracing_subscriber::EnvFilter::from_default_env()).init();
    let args = Args::parse();
    let listener = TcpListener::bind(&args.addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    let shutdown = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    axum::serve(listener, service::router()).with_graceful_shutdown(shutdown).await
}
