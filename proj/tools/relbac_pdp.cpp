// relbac-pdp — long-running policy decision point speaking a line-oriented
// protocol over stdio (--stdio) or TCP (--listen host:port). State is held in
// memory for the lifetime of the process; nothing is written back to disk.
//
// Requests, one per line (blank lines and #-comments are ignored):
//   EVAL <subject> <object> <action>
//   ADD-EDGE <src> <label> <dst>
//   DEL-EDGE <src> <label> <dst>
//   PRECACHE subject <budget> <recent-k> <targets-csv>
//   PRECACHE object <budget> <objects-csv> <subjects-csv>
//   STATS
//   RELOAD-POLICY [path]
//   SHUTDOWN
//
// Responses: `OK ...` on success, `ERR <CODE> <message>` on failure, with
// codes UNKNOWN-NODE, PARSE, WELLFORMED, UNSUPPORTED.

#include <arpa/inet.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>

#include <atomic>
#include <csignal>
#include <cstring>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "relbac/engine.hpp"
#include "relbac/errors.hpp"

namespace {

using namespace relbac;

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string one_line(std::string msg) {
    for (auto& c : msg)
        if (c == '\n' || c == '\r') c = ' ';
    return msg;
}

/** Argument-shape problems in protocol requests; rendered as ERR <code>. */
struct ProtocolError {
    std::string code;
    std::string message;
};

std::optional<std::size_t> parse_count(const std::string& tok) {
    try {
        std::size_t pos = 0;
        unsigned long long n = std::stoull(tok, &pos);
        if (pos != tok.size()) return std::nullopt;
        return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

class Server {
public:
    Server(Engine& engine, std::string policy_path)
        : engine_(engine), policy_path_(std::move(policy_path)) {}

    bool shutting_down() const { return shutdown_.load(); }

    /** Handles one request line; empty result means "no response". */
    std::string handle(const std::string& line) {
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') return "";
        std::lock_guard<std::mutex> lock(mutex_);
        try {
            return dispatch(tok);
        } catch (const ProtocolError& e) {
            return "ERR " + e.code + " " + e.message;
        } catch (const UnknownNodeError& e) {
            return "ERR UNKNOWN-NODE " + one_line(e.what());
        } catch (const ParseError& e) {
            return "ERR PARSE " + one_line(e.what());
        } catch (const WellFormednessError& e) {
            return "ERR WELLFORMED " + one_line(e.what());
        } catch (const Error& e) {
            return "ERR UNSUPPORTED " + one_line(e.what());
        }
    }

private:
    std::string dispatch(const std::vector<std::string>& tok) {
        const std::string& verb = tok[0];
        if (verb == "EVAL") return do_eval(tok);
        if (verb == "ADD-EDGE") return do_edge(tok, /*add=*/true);
        if (verb == "DEL-EDGE") return do_edge(tok, /*add=*/false);
        if (verb == "PRECACHE") return do_precache(tok);
        if (verb == "STATS") return do_stats(tok);
        if (verb == "RELOAD-POLICY") return do_reload(tok);
        if (verb == "SHUTDOWN") {
            if (tok.size() != 1) throw ProtocolError{"PARSE", "SHUTDOWN takes no arguments"};
            shutdown_.store(true);
            return "OK";
        }
        return "ERR UNSUPPORTED unknown verb " + verb;
    }

    std::string do_eval(const std::vector<std::string>& tok) {
        if (tok.size() != 4)
            throw ProtocolError{"PARSE", "expected: EVAL <subject> <object> <action>"};
        EvalOutcome out = engine_.evaluate({tok[1], tok[2], tok[3]});
        std::ostringstream reply;
        reply << "OK " << (out.decision == Decision::Allow ? "ALLOW" : "DENY")
              << " mp=[";
        for (std::size_t i = 0; i < out.matched_principals.size(); ++i) {
            if (i) reply << ",";
            reply << out.matched_principals[i];
        }
        reply << "] cached=" << (out.cache_hit ? 1 : 0)
              << " n=" << out.metrics.nodes_visited
              << " e=" << out.metrics.edges_considered;
        return reply.str();
    }

    std::string do_edge(const std::vector<std::string>& tok, bool add) {
        if (tok.size() != 4)
            throw ProtocolError{"PARSE", std::string("expected: ") +
                                              (add ? "ADD" : "DEL") +
                                              "-EDGE <src> <label> <dst>"};
        if (add)
            engine_.add_relationship_edge(tok[1], tok[2], tok[3]);
        else
            engine_.remove_relationship_edge(tok[1], tok[2], tok[3]);
        return "OK";  // idempotent either way
    }

    std::string do_precache(const std::vector<std::string>& tok) {
        if (tok.size() != 5)
            throw ProtocolError{
                "PARSE",
                "expected: PRECACHE subject <budget> <recent-k> <targets-csv> | "
                "PRECACHE object <budget> <objects-csv> <subjects-csv>"};
        auto budget = parse_count(tok[2]);
        if (!budget) throw ProtocolError{"PARSE", "bad budget: " + tok[2]};
        std::size_t inserted = 0;
        if (tok[1] == "subject") {
            auto recent_k = parse_count(tok[3]);
            if (!recent_k) throw ProtocolError{"PARSE", "bad recent-k: " + tok[3]};
            inserted = engine_.precache(
                SubjectFocusedPrecache{*recent_k, split_csv(tok[4])}, *budget);
        } else if (tok[1] == "object") {
            inserted = engine_.precache(
                ObjectFocusedPrecache{split_csv(tok[3]), split_csv(tok[4])}, *budget);
        } else {
            throw ProtocolError{"PARSE", "expected subject|object, got " + tok[1]};
        }
        return "OK cached=" + std::to_string(inserted);
    }

    std::string do_stats(const std::vector<std::string>& tok) {
        if (tok.size() != 1) throw ProtocolError{"PARSE", "STATS takes no arguments"};
        CacheStats s = engine_.cache_stats();
        return "OK size=" + std::to_string(s.size) + " hits=" +
               std::to_string(s.hits) + " misses=" + std::to_string(s.misses);
    }

    std::string do_reload(const std::vector<std::string>& tok) {
        if (tok.size() > 2) throw ProtocolError{"PARSE", "expected: RELOAD-POLICY [path]"};
        const std::string& path = tok.size() == 2 ? tok[1] : policy_path_;
        engine_.reload_policies(parse_policy(read_file(path)));
        return "OK";
    }

    Engine& engine_;
    std::string policy_path_;
    std::mutex mutex_;
    std::atomic<bool> shutdown_{false};
};

void serve_stdio(Server& server) {
    std::string line;
    while (!server.shutting_down() && std::getline(std::cin, line)) {
        std::string reply = server.handle(line);
        if (!reply.empty()) std::cout << reply << "\n" << std::flush;
    }
}

/** Waits until fd is readable, the server shuts down, or the peer drops.
 *  Returns false when reading should stop. Polling with a timeout is what
 *  lets a SHUTDOWN issued on one connection wake every other blocked thread. */
bool wait_readable(const Server& server, int fd) {
    while (!server.shutting_down()) {
        pollfd pfd{fd, POLLIN, 0};
        int ready = ::poll(&pfd, 1, 200);
        if (ready < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        if (ready > 0) return true;
    }
    return false;
}

/** Reads lines from fd, answers each; returns on EOF or shutdown. */
void serve_connection(Server& server, int fd) {
    std::string buffer;
    char chunk[4096];
    while (wait_readable(server, fd)) {
        ssize_t got = ::read(fd, chunk, sizeof chunk);
        if (got <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(got));
        std::size_t nl;
        while ((nl = buffer.find('\n')) != std::string::npos) {
            std::string line = buffer.substr(0, nl);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            buffer.erase(0, nl + 1);
            std::string reply = server.handle(line);
            if (reply.empty()) continue;
            reply += "\n";
            if (::write(fd, reply.data(), reply.size()) < 0) {
                ::close(fd);
                return;
            }
        }
    }
    ::close(fd);
}

int serve_tcp(Server& server, const std::string& host, const std::string& port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* found = nullptr;
    if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &found); rc != 0) {
        std::cerr << "error: cannot resolve " << host << ":" << port << ": "
                  << gai_strerror(rc) << "\n";
        return 1;
    }
    int listener = -1;
    for (addrinfo* ai = found; ai; ai = ai->ai_next) {
        listener = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (listener < 0) continue;
        int yes = 1;
        ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
        if (::bind(listener, ai->ai_addr, ai->ai_addrlen) == 0 &&
            ::listen(listener, 16) == 0)
            break;
        ::close(listener);
        listener = -1;
    }
    ::freeaddrinfo(found);
    if (listener < 0) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
    }
    std::cerr << "listening on " << host << ":" << port << "\n";

    std::vector<std::thread> workers;
    while (wait_readable(server, listener)) {
        int fd = ::accept(listener, nullptr, nullptr);
        if (fd < 0) break;
        workers.emplace_back(serve_connection, std::ref(server), fd);
    }
    ::close(listener);
    for (auto& w : workers)
        if (w.joinable()) w.join();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relationship-based access-control decision point"};
    app.set_version_flag("--version", "relbac-pdp 0.1.0");

    std::string model_path, graph_path, policy_path, config_path, listen;
    bool stdio = false;
    app.add_option("--model", model_path, "system model document")->required();
    app.add_option("--graph", graph_path, "system graph document")->required();
    app.add_option("--policy", policy_path, "policy document")->required();
    app.add_option("--config", config_path, "engine configuration document");
    app.add_flag("--stdio", stdio, "speak the protocol on stdin/stdout");
    app.add_option("--listen", listen, "listen on host:port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (stdio == !listen.empty()) {
        std::cerr << "error: pass exactly one of --stdio or --listen\n";
        return 2;
    }

    try {
        Engine engine = Engine::from_documents(
            read_file(model_path), read_file(graph_path), read_file(policy_path),
            config_path.empty() ? "" : read_file(config_path));
        Server server(engine, policy_path);
        if (stdio) {
            serve_stdio(server);
            return 0;
        }
        auto colon = listen.rfind(':');
        if (colon == std::string::npos) {
            std::cerr << "error: --listen expects host:port\n";
            return 2;
        }
        return serve_tcp(server, listen.substr(0, colon), listen.substr(colon + 1));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
