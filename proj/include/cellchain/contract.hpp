#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cellchain/chain.hpp"

namespace cellchain {

/// Typed storage cell. Storage is an ordered field list so its canonical
/// serialization is stable.
using Value = std::variant<int64_t, bool, std::string>;
using Storage = std::vector<std::pair<std::string, Value>>;

enum class ValueTag : uint8_t { Int = 0, Bool = 1, Str = 2 };

std::string value_to_text(const Value& v);

enum class OpKind : uint8_t { SetVelocity = 0, StopAtHome = 1 };

/// Command surfaced by an entry point: either a new movement duration in
/// seconds per movement, or a stop order.
struct EmittedOperation {
    OpKind kind = OpKind::StopAtHome;
    int64_t value = 0;  // seconds per movement; meaningful for SetVelocity only
};

struct EntryResult {
    bool ok = false;
    std::string error;
    std::vector<EmittedOperation> operations;
    Storage storage;
};

using EntryFn = std::function<EntryResult(
    const std::string& caller, const std::vector<Value>& params, const Storage& storage)>;

/// Thrown by init functions on malformed arguments.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using InitFn = std::function<Storage(const std::vector<Value>& init_args)>;

/// Host-native contract definition: version, storage schema, one-time init,
/// and named entry points that return an operations list plus new storage.
struct ContractDef {
    std::string version;
    std::vector<std::pair<std::string, ValueTag>> storage_schema;
    InitFn init;
    std::vector<std::pair<std::string, EntryFn>> entry_points;

    /// Digest over version, schema, and entry names. Stable for the life of a
    /// deployment; used to derive the contract address.
    Digest code_id() const;

    const EntryFn* find_entry(const std::string& name) const;
};

struct DeployOutcome {
    bool ok = false;
    std::string error;
    std::string address;
};

struct CallOutcome {
    bool ok = false;
    std::string error;
    std::vector<EmittedOperation> operations;
};

Bytes storage_canonical_bytes(const Storage& storage);

/// Deterministic contract executor. One call at a time; storage is replaced
/// atomically on success and untouched on any rejection. Every successful
/// deploy or call is recorded on the ledger as a ContractCall transaction.
class ContractHost {
public:
    explicit ContractHost(Chain& chain);

    DeployOutcome deploy(const ContractDef& def, const std::vector<Value>& init_args,
                         const std::string& deployer);

    CallOutcome call(const std::string& address, const std::string& entry,
                     const std::string& caller, const std::vector<Value>& params);

    bool deployed(const std::string& address) const;
    const Storage& storage(const std::string& address) const;
    Bytes storage_bytes(const std::string& address) const;
    Digest code_id(const std::string& address) const;
    std::string dump_storage(const std::string& address) const;

    uint64_t successful_calls() const { return successful_calls_; }

private:
    struct Deployed {
        ContractDef def;
        Digest code;
        Storage storage;
    };

    void record_call(const std::string& sender, const std::string& address,
                     const std::string& entry, const std::string& argument,
                     const std::string& description);
    static bool conforms(const Storage& storage,
                         const std::vector<std::pair<std::string, ValueTag>>& schema);

    Chain& chain_;
    std::map<std::string, Deployed> contracts_;
    uint64_t successful_calls_ = 0;
};

std::string params_to_argument(const std::vector<Value>& params);
std::vector<Value> argument_to_params(const std::string& argument);

}  // namespace cellchain
