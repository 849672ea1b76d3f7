#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "amcm/cdm/text.hpp"
#include "amcm/cli/cli.hpp"
#include "amcm/lang/parser.hpp"
#include "amcm/lang/printer.hpp"
#include "amcm/machine/machine.hpp"
#include "amcm/tpl/render.hpp"
#include "amcm/xlat/translate.hpp"

namespace amcm::cli {

namespace fs = std::filesystem;

namespace {

struct Session {
    std::ostream& out;
    std::ostream& err;
    std::optional<ProjectConfig> config;
};

struct IoFailure {
    std::string message;
};

Result<std::string, IoFailure> slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return IoFailure{"cannot read " + file.string()};
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// Context precedence: explicit flag, then the project default, then the
// built-in anonymous context.
Result<tpl::PersonalizationContext, std::string> pick_context(const Session& s,
                                                              const std::string& flag) {
    fs::path file;
    if (!flag.empty()) {
        file = flag;
    } else if (s.config.has_value() && s.config->default_context.has_value()) {
        file = *s.config->default_context;
    } else {
        return tpl::PersonalizationContext{};
    }
    auto text = slurp(file);
    if (!text.ok()) return std::move(text).error().message;
    auto ctx = tpl::parse_context(text.value());
    if (!ctx.ok()) return file.string() + ": " + ctx.error().to_string();
    return std::move(ctx).value();
}

int cmd_check(Session& s, const std::string& model_file) {
    auto text = slurp(model_file);
    if (!text.ok()) {
        s.err << text.error().message << "\n";
        return 1;
    }
    auto model = cdm::parse_model(text.value());
    if (!model.ok()) {
        s.err << model_file << ": " << model.error().to_string() << "\n";
        return 1;
    }
    xlat::IntegrityReport report = xlat::check_integrity(model.value());
    for (const xlat::Finding& f : report.findings) s.out << f.to_string() << "\n";
    s.out << report.summary() << "\n";
    return report.passed() ? 0 : 2;
}

int cmd_render(Session& s, const std::string& template_name, const std::string& context_flag,
               bool want_trace) {
    if (!s.config.has_value()) {
        s.err << "render needs a project config (amcm.conf or AMCM_PROJECT)\n";
        return 1;
    }
    const ProjectConfig& cfg = *s.config;
    if (!cfg.has_content_root()) {
        s.err << "config has no content_root\n";
        return 1;
    }
    auto store = tpl::load_store(cfg.content_root);
    if (!store.ok()) {
        s.err << store.error().to_string() << "\n";
        return 1;
    }

    std::optional<tpl::Template> tpl_found;
    for (const fs::path& file : cfg.templates) {
        auto text = slurp(file);
        if (!text.ok()) {
            s.err << text.error().message << "\n";
            return 1;
        }
        auto t = tpl::parse_template(text.value());
        if (!t.ok()) {
            s.err << file.string() << ": " << t.error().to_string() << "\n";
            return 1;
        }
        if (t.value().name == template_name) tpl_found = std::move(t).value();
    }
    if (!tpl_found.has_value()) {
        s.err << "no template named '" << template_name << "' in the project\n";
        return 1;
    }

    std::optional<lang::BindingAst> binding;
    for (const fs::path& file : cfg.bindings) {
        auto text = slurp(file);
        if (!text.ok()) {
            s.err << text.error().message << "\n";
            return 1;
        }
        auto b = lang::parse_binding(text.value());
        if (!b.ok()) {
            s.err << file.string() << ": " << b.error().to_string() << "\n";
            return 1;
        }
        if (b.value().template_name != template_name) continue;
        if (binding.has_value()) {
            s.err << "two bindings for template '" << template_name << "'\n";
            return 1;
        }
        binding = std::move(b).value();
    }
    if (!binding.has_value()) {
        s.err << "no binding for template '" << template_name << "'\n";
        return 1;
    }

    auto ctx = pick_context(s, context_flag);
    if (!ctx.ok()) {
        s.err << ctx.error() << "\n";
        return 1;
    }

    std::string trace_text;
    machine::TraceFn trace_fn;
    if (want_trace)
        trace_fn = [&trace_text](std::size_t n, const std::string& rule,
                                 const machine::MachineState& state) {
            trace_text += machine::trace_line(n, rule, state);
            trace_text += '\n';
        };

    auto page = tpl::render(*tpl_found, binding->program, store.value(), ctx.value(), trace_fn);
    if (!page.ok()) {
        s.err << "machine error: " << page.error().to_string() << "\n";
        return 3;
    }

    fs::path html = cfg.output_dir / (template_name + ".html");
    auto wrote = write_atomic(html, page.value().text);
    if (!wrote.ok()) {
        s.err << wrote.error() << "\n";
        return 1;
    }
    if (want_trace) {
        auto wrote_trace = write_atomic(cfg.output_dir / (template_name + ".trace"), trace_text);
        if (!wrote_trace.ok()) {
            s.err << wrote_trace.error() << "\n";
            return 1;
        }
    }
    s.out << "wrote " << html.string() << "\n";
    return 0;
}

int cmd_translate(Session& s, const std::string& model_file, const std::string& ddl_out,
                  const std::string& load_out) {
    auto text = slurp(model_file);
    if (!text.ok()) {
        s.err << text.error().message << "\n";
        return 1;
    }
    auto model = cdm::parse_model(text.value());
    if (!model.ok()) {
        s.err << model_file << ": " << model.error().to_string() << "\n";
        return 2;
    }

    // Both artifacts demand a clean model; nothing is written otherwise.
    xlat::IntegrityReport report = xlat::check_integrity(model.value());
    if (!report.passed()) {
        for (const xlat::Finding& f : report.findings) s.err << f.to_string() << "\n";
        s.err << report.summary() << "\n";
        return 2;
    }

    if (!ddl_out.empty()) {
        auto doc = xlat::translate_ddl(model.value());
        if (!doc.ok()) {
            s.err << doc.error().to_string() << "\n";
            return 2;
        }
        auto wrote = write_atomic(ddl_out, doc.value().to_sql());
        if (!wrote.ok()) {
            s.err << wrote.error() << "\n";
            return 1;
        }
        s.out << "wrote " << ddl_out << "\n";
    }

    if (!load_out.empty()) {
        if (!s.config.has_value() || !s.config->has_content_root()) {
            s.err << "--load needs a project config with a content_root\n";
            return 1;
        }
        auto store = tpl::load_store(s.config->content_root);
        if (!store.ok()) {
            s.err << store.error().to_string() << "\n";
            return 1;
        }
        auto ctx = pick_context(s, "");
        if (!ctx.ok()) {
            s.err << ctx.error() << "\n";
            return 1;
        }
        auto program = xlat::emit_load_program(store.value(), ctx.value());
        if (!program.ok()) {
            s.err << program.error().to_string() << "\n";
            return 2;
        }
        auto wrote = write_atomic(load_out, lang::print_binding("load", program.value()));
        if (!wrote.ok()) {
            s.err << wrote.error() << "\n";
            return 1;
        }
        s.out << "wrote " << load_out << "\n";
    }
    return 0;
}

Result<std::vector<Value>, std::string> parse_input_values(const std::string& text) {
    auto tokens = lang::tokenize(text, lang::program_keywords());
    if (!tokens.ok()) return "input: " + tokens.error().to_string();
    std::vector<Value> values;
    for (const lang::Token& t : tokens.value()) {
        if (t.kind == lang::TokenKind::Literal) {
            values.push_back(Value::from_literal(*t.literal));
        } else if (t.is_keyword("true")) {
            values.push_back(Value::boolean(true));
        } else if (t.is_keyword("false")) {
            values.push_back(Value::boolean(false));
        } else {
            return "input: expected one literal per line, found '" + t.text + "' at " +
                   t.pos.to_string();
        }
    }
    return values;
}

int cmd_eval(Session& s, const std::string& program_file, const std::string& input_file) {
    auto text = slurp(program_file);
    if (!text.ok()) {
        s.err << text.error().message << "\n";
        return 1;
    }
    auto parsed = lang::parse_program_or_binding(text.value());
    if (!parsed.ok()) {
        s.err << program_file << ": " << parsed.error().to_string() << "\n";
        return 1;
    }

    std::vector<Value> input;
    if (!input_file.empty()) {
        auto itext = slurp(input_file);
        if (!itext.ok()) {
            s.err << itext.error().message << "\n";
            return 1;
        }
        auto values = parse_input_values(itext.value());
        if (!values.ok()) {
            s.err << values.error() << "\n";
            return 1;
        }
        input = std::move(values).value();
    }

    // Content lookups work when the project provides a store.
    std::optional<tpl::ContentStore> store;
    tpl::PersonalizationContext ctx;
    if (s.config.has_value() && s.config->has_content_root()) {
        auto loaded = tpl::load_store(s.config->content_root);
        if (!loaded.ok()) {
            s.err << loaded.error().to_string() << "\n";
            return 1;
        }
        store = std::move(loaded).value();
        auto picked = pick_context(s, "");
        if (!picked.ok()) {
            s.err << picked.error() << "\n";
            return 1;
        }
        ctx = std::move(picked).value();
    }
    machine::RunEnv env{store.has_value() ? &*store : nullptr, &ctx};

    auto finished = machine::run(parsed.value().program, std::move(input), env);
    if (!finished.ok()) {
        s.err << "machine error: " << finished.error().to_string() << "\n";
        return 3;
    }
    const machine::MachineState& state = finished.value();
    s.out << "mem=" << state.memory.show() << "\n";
    s.out << "out=[";
    for (std::size_t i = 0; i < state.output.size(); ++i) {
        if (i) s.out << ", ";
        s.out << state.output[i].show();
    }
    s.out << "]\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Typed content templating and model compilation toolkit"};
    app.name("amcm");
    bool verbose = false;
    app.add_flag("--verbose", verbose, "print a timing line to stderr");
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "validate a model file and report findings");
    std::string check_model;
    check->add_option("model", check_model, "model file")->required();

    auto* render = app.add_subcommand("render", "render a template into the output directory");
    std::string render_template;
    std::string render_context;
    bool render_trace = false;
    render->add_option("template", render_template, "template name")->required();
    render->add_option("--context", render_context, "context file overriding the default");
    render->add_flag("--trace", render_trace, "also write the machine step trace");

    auto* translate = app.add_subcommand("translate", "compile a model to DDL and load code");
    std::string translate_model;
    std::string translate_ddl_out;
    std::string translate_load_out;
    translate->add_option("model", translate_model, "model file")->required();
    translate->add_option("--ddl", translate_ddl_out, "write the DDL document here");
    translate->add_option("--load", translate_load_out, "write the load program here");

    auto* eval = app.add_subcommand("eval", "run a program standalone and print the final state");
    std::string eval_program;
    std::string eval_input;
    eval->add_option("program", eval_program, "program file")->required();
    eval->add_option("--input", eval_input, "file of input literals, one per line");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    Session session{out, err, std::nullopt};
    const char* env_config = std::getenv("AMCM_PROJECT");
    fs::path config_file = env_config != nullptr ? fs::path(env_config) : fs::path("amcm.conf");
    std::error_code ec;
    if (env_config != nullptr || fs::exists(config_file, ec)) {
        auto cfg = load_config(config_file);
        if (!cfg.ok()) {
            err << cfg.error() << "\n";
            return 1;
        }
        session.config = std::move(cfg).value();
    }

    auto started = std::chrono::steady_clock::now();
    int code = 1;
    if (check->parsed()) {
        code = cmd_check(session, check_model);
    } else if (render->parsed()) {
        code = cmd_render(session, render_template, render_context, render_trace);
    } else if (translate->parsed()) {
        code = cmd_translate(session, translate_model, translate_ddl_out, translate_load_out);
    } else if (eval->parsed()) {
        code = cmd_eval(session, eval_program, eval_input);
    }
    if (verbose) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started);
        err << "elapsed " << elapsed.count() << " ms\n";
    }
    return code;
}

}  // namespace amcm::cli
