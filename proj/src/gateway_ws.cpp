#include <atomic>
#include <deque>
#include <future>
#include <list>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "star/gateway.hpp"

namespace star::gateway {
namespace {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, std::string id, const ServerOptions& options)
      : ws_(std::move(socket)), id_(std::move(id)), options_(options) {}

  ~Connection() { session_.reset(); }

  void start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(beast::bind_front_handler(&Connection::on_accept, shared_from_this()));
  }

  void close() {
    net::post(ws_.get_executor(), [self = shared_from_this()] {
      self->ws_.next_layer().close();
    });
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    std::weak_ptr<Connection> weak = shared_from_this();
    auto exec = ws_.get_executor();
    session_ = std::make_unique<Session>(
        id_, options_.match, options_.agent, options_.session,
        [weak, exec](const nlohmann::json& m) {
          net::post(exec, [weak, text = m.dump()] {
            if (auto self = weak.lock()) self->send(text);
          });
        });
    read();
  }

  void read() {
    ws_.async_read(buffer_,
                   beast::bind_front_handler(&Connection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      if (session_) session_->disconnect();
      return;
    }
    session_->post(beast::buffers_to_string(buffer_.data()));
    buffer_.consume(buffer_.size());
    read();
  }

  void send(std::string text) {
    outbox_.push_back(std::move(text));
    if (outbox_.size() == 1) write();
  }

  void write() {
    ws_.text(true);
    ws_.async_write(net::buffer(outbox_.front()),
                    beast::bind_front_handler(&Connection::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      outbox_.clear();
      if (session_) session_->disconnect();
      return;
    }
    outbox_.pop_front();
    if (!outbox_.empty()) write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  std::string id_;
  const ServerOptions& options_;
  std::unique_ptr<Session> session_;
};

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions o) : options(std::move(o)), acceptor(ioc) {}

  void accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket s) {
      if (ec) return;
      auto c = std::make_shared<Connection>(std::move(s), "s" + std::to_string(++counter),
                                            options);
      {
        std::lock_guard lock(mu);
        connections.push_back(c);
      }
      c->start();
      accept();
    });
  }

  ServerOptions options;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::thread thread;
  std::atomic<int> counter{0};
  std::mutex mu;
  std::list<std::weak_ptr<Connection>> connections;
  std::promise<void> stopped;
  bool running = false;
  unsigned short port = 0;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() { stop(); }

void Server::start() {
  auto& i = *impl_;
  const tcp::endpoint ep(net::ip::make_address(i.options.address), i.options.port);
  i.acceptor.open(ep.protocol());
  i.acceptor.set_option(net::socket_base::reuse_address(true));
  i.acceptor.bind(ep);
  i.acceptor.listen();
  i.port = i.acceptor.local_endpoint().port();
  i.accept();
  i.running = true;
  i.thread = std::thread([&i] { i.ioc.run(); });
}

unsigned short Server::port() const { return impl_->port; }

void Server::stop() {
  auto& i = *impl_;
  if (!i.running) return;
  i.running = false;
  net::post(i.ioc, [&i] {
    beast::error_code ec;
    i.acceptor.close(ec);
  });
  {
    std::lock_guard lock(i.mu);
    for (auto& w : i.connections) {
      if (auto c = w.lock()) c->close();
    }
  }
  i.ioc.stop();
  if (i.thread.joinable()) i.thread.join();
  i.stopped.set_value();
}

void Server::run_forever() { impl_->stopped.get_future().wait(); }

}  // namespace star::gateway
