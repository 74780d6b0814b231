#include "dnaclab/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

namespace
{

const char* const kHeader =
    "t,px,py,pz,vx,vy,vz,roll,pitch,yaw,p,q,r,"
    "ref_x,ref_y,ref_z,vref_x,vref_y,vref_z,"
    "att_ref_roll,att_ref_pitch,att_ref_rate_roll,att_ref_rate_pitch,"
    "err_roll,err_pitch,base_roll,base_pitch,added_roll,added_pitch,"
    "total_roll,total_pitch,yaw_torque,thrust,f_hat_roll,f_hat_pitch,w_norm,"
    "train_event,fault_event";

constexpr int kColumns = 38;

void collect(const TraceRow& r, double* v)
{
  int i = 0;
  v[i++] = r.t;
  for (int k = 0; k < 3; ++k) v[i++] = r.position(k);
  for (int k = 0; k < 3; ++k) v[i++] = r.velocity(k);
  for (int k = 0; k < 3; ++k) v[i++] = r.attitude(k);
  for (int k = 0; k < 3; ++k) v[i++] = r.body_rates(k);
  for (int k = 0; k < 3; ++k) v[i++] = r.position_ref(k);
  for (int k = 0; k < 3; ++k) v[i++] = r.velocity_ref(k);
  for (int k = 0; k < 2; ++k) v[i++] = r.attitude_ref(k);
  for (int k = 0; k < 2; ++k) v[i++] = r.attitude_ref_rate(k);
  for (int k = 0; k < 2; ++k) v[i++] = r.attitude_error(k);
  for (int k = 0; k < 2; ++k) v[i++] = r.base_torque(k);
  for (int k = 0; k < 2; ++k) v[i++] = r.added_torque(k);
  for (int k = 0; k < 2; ++k) v[i++] = r.total_torque(k);
  v[i++] = r.yaw_torque;
  v[i++] = r.thrust;
  for (int k = 0; k < 2; ++k) v[i++] = r.f_hat(k);
  v[i++] = r.w_norm;
  v[i++] = static_cast<double>(r.train_event);
  v[i++] = static_cast<double>(r.fault_event);
}

void scatter(const double* v, TraceRow& r)
{
  int i = 0;
  r.t = v[i++];
  for (int k = 0; k < 3; ++k) r.position(k) = v[i++];
  for (int k = 0; k < 3; ++k) r.velocity(k) = v[i++];
  for (int k = 0; k < 3; ++k) r.attitude(k) = v[i++];
  for (int k = 0; k < 3; ++k) r.body_rates(k) = v[i++];
  for (int k = 0; k < 3; ++k) r.position_ref(k) = v[i++];
  for (int k = 0; k < 3; ++k) r.velocity_ref(k) = v[i++];
  for (int k = 0; k < 2; ++k) r.attitude_ref(k) = v[i++];
  for (int k = 0; k < 2; ++k) r.attitude_ref_rate(k) = v[i++];
  for (int k = 0; k < 2; ++k) r.attitude_error(k) = v[i++];
  for (int k = 0; k < 2; ++k) r.base_torque(k) = v[i++];
  for (int k = 0; k < 2; ++k) r.added_torque(k) = v[i++];
  for (int k = 0; k < 2; ++k) r.total_torque(k) = v[i++];
  r.yaw_torque = v[i++];
  r.thrust = v[i++];
  for (int k = 0; k < 2; ++k) r.f_hat(k) = v[i++];
  r.w_norm = v[i++];
  r.train_event = static_cast<int>(v[i++]);
  r.fault_event = static_cast<int>(v[i++]);
}

}  // namespace

std::string trace_to_csv(const Trace& trace)
{
  std::string out(kHeader);
  out.push_back('\n');
  char buf[32];
  double v[kColumns];
  for (const auto& row : trace)
  {
    collect(row, v);
    for (int i = 0; i < kColumns; ++i)
    {
      std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
      out += buf;
      out.push_back(i + 1 == kColumns ? '\n' : ',');
    }
  }
  return out;
}

Trace trace_from_csv(const std::string& text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw ConfigError("unrecognized trace header");
  Trace trace;
  double v[kColumns];
  while (std::getline(in, line))
  {
    if (line.empty())
      continue;
    const char* p = line.c_str();
    char* end = nullptr;
    for (int i = 0; i < kColumns; ++i)
    {
      v[i] = std::strtod(p, &end);
      if (end == p)
        throw ConfigError("malformed trace row");
      p = end;
      if (i + 1 < kColumns)
      {
        if (*p != ',')
          throw ConfigError("malformed trace row");
        ++p;
      }
    }
    TraceRow row;
    scatter(v, row);
    trace.push_back(row);
  }
  return trace;
}

}  // namespace dnaclab
