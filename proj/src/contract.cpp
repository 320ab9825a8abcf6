#include "cellchain/contract.hpp"

#include <sstream>

#include "cellchain/codec.hpp"
#include "cellchain/sha256.hpp"

namespace cellchain {

std::string value_to_text(const Value& v) {
    if (std::holds_alternative<int64_t>(v)) return std::to_string(std::get<int64_t>(v));
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    return std::get<std::string>(v);
}

Digest ContractDef::code_id() const {
    Encoder enc;
    enc.put_string(version);
    enc.put_u32(static_cast<uint32_t>(storage_schema.size()));
    for (const auto& [name, tag] : storage_schema) {
        enc.put_string(name);
        enc.put_u8(static_cast<uint8_t>(tag));
    }
    enc.put_u32(static_cast<uint32_t>(entry_points.size()));
    for (const auto& [name, fn] : entry_points) enc.put_string(name);
    return sha256(enc.bytes());
}

const EntryFn* ContractDef::find_entry(const std::string& name) const {
    for (const auto& [entry_name, fn] : entry_points) {
        if (entry_name == name) return &fn;
    }
    return nullptr;
}

Bytes storage_canonical_bytes(const Storage& storage) {
    Encoder enc;
    enc.put_u32(static_cast<uint32_t>(storage.size()));
    for (const auto& [name, value] : storage) {
        enc.put_string(name);
        enc.put_u8(static_cast<uint8_t>(value.index()));
        if (std::holds_alternative<int64_t>(value)) {
            enc.put_i64(std::get<int64_t>(value));
        } else if (std::holds_alternative<bool>(value)) {
            enc.put_bool(std::get<bool>(value));
        } else {
            enc.put_string(std::get<std::string>(value));
        }
    }
    return enc.take();
}

ContractHost::ContractHost(Chain& chain) : chain_(chain) {}

bool ContractHost::conforms(const Storage& storage,
                            const std::vector<std::pair<std::string, ValueTag>>& schema) {
    if (storage.size() != schema.size()) return false;
    for (size_t i = 0; i < schema.size(); ++i) {
        if (storage[i].first != schema[i].first) return false;
        if (storage[i].second.index() != static_cast<size_t>(schema[i].second)) return false;
    }
    return true;
}

void ContractHost::record_call(const std::string& sender, const std::string& address,
                               const std::string& entry, const std::string& argument,
                               const std::string& description) {
    ContractCallPayload payload{address, entry, argument};
    auto tx = Transaction::contract_call(sender, chain_.next_nonce(sender), description,
                                         std::move(payload));
    auto receipt = chain_.submit(tx);
    if (!receipt.accepted) {
        // a successful call must always be mirrored on the ledger
        throw std::logic_error("contract call not recorded: " + receipt.error);
    }
}

DeployOutcome ContractHost::deploy(const ContractDef& def,
                                   const std::vector<Value>& init_args,
                                   const std::string& deployer) {
    DeployOutcome out;
    Digest code = def.code_id();
    std::string address = "ct1" + to_hex(code).substr(0, 20);
    if (contracts_.count(address)) {
        out.error = "address " + address + " already occupied";
        return out;
    }
    Storage initial;
    try {
        initial = def.init(init_args);
    } catch (const ContractError& e) {
        out.error = std::string("init rejected: ") + e.what();
        return out;
    }
    if (!conforms(initial, def.storage_schema)) {
        out.error = "init returned storage not matching the schema";
        return out;
    }
    contracts_.emplace(address, Deployed{def, code, std::move(initial)});
    ++successful_calls_;
    record_call(deployer, address, "(deploy)", params_to_argument(init_args),
                "deploy contract " + address);
    out.ok = true;
    out.address = address;
    return out;
}

CallOutcome ContractHost::call(const std::string& address, const std::string& entry,
                               const std::string& caller,
                               const std::vector<Value>& params) {
    CallOutcome out;
    auto it = contracts_.find(address);
    if (it == contracts_.end()) {
        out.error = "no contract at " + address;
        return out;
    }
    Deployed& c = it->second;
    const EntryFn* fn = c.def.find_entry(entry);
    if (fn == nullptr) {
        out.error = "unknown entry point '" + entry + "'";
        return out;
    }
    EntryResult result = (*fn)(caller, params, c.storage);
    if (!result.ok) {
        out.error = result.error;
        return out;
    }
    if (!conforms(result.storage, c.def.storage_schema)) {
        out.error = "contract fault: returned storage not matching the schema";
        return out;
    }
    c.storage = std::move(result.storage);
    ++successful_calls_;

    std::ostringstream desc;
    desc << entry << " " << params_to_argument(params);
    for (const auto& op : result.operations) {
        if (op.kind == OpKind::SetVelocity) {
            desc << " -> set_velocity " << op.value;
        } else {
            desc << " -> stop_at_home";
        }
    }
    record_call(caller, address, entry, params_to_argument(params), desc.str());

    out.ok = true;
    out.operations = std::move(result.operations);
    return out;
}

bool ContractHost::deployed(const std::string& address) const {
    return contracts_.count(address) != 0;
}

const Storage& ContractHost::storage(const std::string& address) const {
    return contracts_.at(address).storage;
}

Bytes ContractHost::storage_bytes(const std::string& address) const {
    return storage_canonical_bytes(contracts_.at(address).storage);
}

Digest ContractHost::code_id(const std::string& address) const {
    return contracts_.at(address).code;
}

std::string ContractHost::dump_storage(const std::string& address) const {
    std::ostringstream out;
    for (const auto& [name, value] : contracts_.at(address).storage) {
        out << name << " = " << value_to_text(value) << "\n";
    }
    return out.str();
}

std::string params_to_argument(const std::vector<Value>& params) {
    std::string out;
    for (size_t i = 0; i < params.size(); ++i) {
        if (i > 0) out += ",";
        const Value& v = params[i];
        if (std::holds_alternative<int64_t>(v)) {
            out += "i:" + std::to_string(std::get<int64_t>(v));
        } else if (std::holds_alternative<bool>(v)) {
            out += std::get<bool>(v) ? "b:true" : "b:false";
        } else {
            out += "s:" + std::get<std::string>(v);
        }
    }
    return out;
}

std::vector<Value> argument_to_params(const std::string& argument) {
    std::vector<Value> out;
    if (argument.empty()) return out;
    size_t start = 0;
    while (start <= argument.size()) {
        size_t end = argument.find(',', start);
        std::string item = argument.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        if (item.size() < 2 || item[1] != ':') {
            throw std::invalid_argument("bad argument item: " + item);
        }
        std::string body = item.substr(2);
        switch (item[0]) {
            case 'i': out.emplace_back(static_cast<int64_t>(std::stoll(body))); break;
            case 'b': out.emplace_back(body == "true"); break;
            case 's': out.emplace_back(body); break;
            default: throw std::invalid_argument("bad argument tag: " + item);
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

}  // namespace cellchain
