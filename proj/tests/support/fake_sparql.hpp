#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <regex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace semrel::testing {

// In-process stand-in for a Wikidata query service. It understands only the
// two query shapes the harvester emits, which it recognizes by regex.
class FakeSparqlServer {
public:
    struct Statement {
        std::string seed;
        std::string target;
        std::string pid;
        bool seed_article = true;
        bool target_article = true;
    };

    explicit FakeSparqlServer(std::vector<Statement> statements)
        : statements_(std::move(statements)) {
        server_.Post("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
            handle(req.get_param_value("query"), res);
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~FakeSparqlServer() {
        server_.stop();
        thread_.join();
    }

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/sparql"; }
    int requests() const { return requests_.load(); }
    void fail_next(int n, int status = 503) {
        failures_ = n;
        failure_status_ = status;
    }
    std::vector<std::string> queries() const {
        std::lock_guard lock(mutex_);
        return queries_;
    }

private:
    static nlohmann::json uri(const std::string& v) { return {{"type", "uri"}, {"value", v}}; }

    nlohmann::json binding(const Statement& s, bool with_prop) const {
        nlohmann::json b{{"seed", uri("http://www.wikidata.org/entity/" + s.seed)},
                         {"target", uri("http://www.wikidata.org/entity/" + s.target)}};
        if (with_prop) b["prop"] = uri("http://www.wikidata.org/prop/direct/" + s.pid);
        if (s.seed_article) b["seedArticle"] = uri("https://en.wikipedia.org/wiki/" + s.seed);
        if (s.target_article) b["targetArticle"] = uri("https://en.wikipedia.org/wiki/" + s.target);
        return b;
    }

    void handle(const std::string& query, httplib::Response& res) {
        ++requests_;
        {
            std::lock_guard lock(mutex_);
            queries_.push_back(query);
        }
        if (failures_ > 0) {
            --failures_;
            res.status = failure_status_;
            res.set_content("try later", "text/plain");
            return;
        }
        std::smatch m;
        static const std::regex page(R"(LIMIT (\d+) OFFSET (\d+))");
        if (!std::regex_search(query, m, page)) {
            res.status = 400;
            return;
        }
        const std::size_t limit = std::stoul(m[1]);
        const std::size_t offset = std::stoul(m[2]);

        std::vector<const Statement*> rows;
        const bool expansion = query.find("VALUES ?seed {") != std::string::npos;
        if (expansion) {
            static const std::regex values(R"(VALUES \?seed \{([^}]*)\})");
            std::regex_search(query, m, values);
            std::set<std::string> seeds;
            const std::string block = m[1];
            static const std::regex item(R"(wd:(Q\d+))");
            for (auto it = std::sregex_iterator(block.begin(), block.end(), item);
                 it != std::sregex_iterator(); ++it) {
                seeds.insert((*it)[1]);
            }
            for (const auto& s : statements_) {
                if (seeds.contains(s.seed)) rows.push_back(&s);
            }
        } else {
            static const std::regex prop(R"(\?seed wdt:(P\d+) \?target)");
            if (!std::regex_search(query, m, prop)) {
                res.status = 400;
                return;
            }
            for (const auto& s : statements_) {
                if (s.pid == m[1]) rows.push_back(&s);
            }
        }
        std::sort(rows.begin(), rows.end(), [](const Statement* a, const Statement* b) {
            return std::tie(a->seed, a->pid, a->target) < std::tie(b->seed, b->pid, b->target);
        });
        nlohmann::json bindings = nlohmann::json::array();
        for (std::size_t i = offset; i < rows.size() && i < offset + limit; ++i) {
            bindings.push_back(binding(*rows[i], expansion));
        }
        nlohmann::json body{{"head", {{"vars", {"seed", "target"}}}},
                            {"results", {{"bindings", bindings}}}};
        res.set_content(body.dump(), "application/sparql-results+json");
    }

    std::vector<Statement> statements_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
    std::atomic<int> failures_{0};
    int failure_status_ = 503;
    mutable std::mutex mutex_;
    std::vector<std::string> queries_;
};

}  // namespace semrel::testing
