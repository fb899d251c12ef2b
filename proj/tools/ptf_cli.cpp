/*!
  \file ptf_cli.cpp
  \brief Command-line frontend: spectra, solving, exact density, PTF
         verification, experiment sweeps, and convention calibration.

  Exit codes: 0 success, 1 verification failure, 2 usage error.
*/

#include <ptf/bf.hpp>
#include <ptf/calibration.hpp>
#include <ptf/feasibility.hpp>
#include <ptf/ptf.hpp>
#include <ptf/solvers.hpp>
#include <ptf/sweep.hpp>

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

struct solve_options
{
  std::string bf_text;
  std::string algorithm{ "l" };
  std::string json_out;
  uint64_t seed{ 0 };
  bool descending{ false };
  bool signed_sort{ false };
  ptf::ga_config ga;
};

void add_ga_flags( CLI::App* cmd, ptf::ga_config& ga )
{
  cmd->add_option( "--ga-population", ga.population, "GA population size" );
  cmd->add_option( "--ga-mutation-rate", ga.mutation_rate, "GA per-bit mutation probability" );
  cmd->add_option( "--ga-generations", ga.generations, "GA generation count" );
  cmd->add_option( "--ga-crossover-rate", ga.crossover_rate, "GA crossover probability" );
  cmd->add_option( "--ga-tournament-size", ga.tournament_size, "GA tournament size" );
  cmd->add_option( "--ga-elitism", ga.elitism, "GA elite count" );
}

int run_spectrum( std::string const& bf_text )
{
  auto const f = ptf::parse_bf( bf_text );
  auto const s = ptf::spectrum( f );
  size_t support = 0;
  for ( ptf::monomial_id j = 0; j < s.coeffs.size(); ++j )
  {
    if ( s.coeffs[j] != 0 )
    {
      ++support;
      std::cout << ptf::format_monomial( j ) << ": " << ptf::format_rat( s.coeffs[j] ) << '\n';
    }
  }
  std::cout << "support: " << support << '\n';
  return 0;
}

int run_solve( solve_options const& opt )
{
  auto const f = ptf::parse_bf( opt.bf_text );
  ptf::sort_options sort{ !opt.descending, !opt.signed_sort };
  ptf::solve_result res = [&]() {
    if ( opt.algorithm == "brute" )
    {
      return ptf::brute_force_density( f ).result;
    }
    if ( opt.algorithm == "l" )
    {
      return ptf::l_heuristic( f, sort );
    }
    if ( opt.algorithm == "b" )
    {
      return ptf::b_heuristic( f, sort );
    }
    if ( opt.algorithm == "3q" )
    {
      return ptf::three_quarters( f );
    }
    if ( opt.algorithm == "ga" )
    {
      auto cfg = opt.ga;
      cfg.seed = opt.seed;
      return ptf::ga_solve( f, cfg );
    }
    throw CLI::ValidationError( "--alg must be one of brute|l|b|3q|ga" );
  }();

  if ( auto const rep = ptf::verify_ptf( res.ptf, f ); !rep.ok )
  {
    std::cerr << "error: produced polynomial failed verification\n";
    return 1;
  }
  std::cout << ptf::format_ptf( res.ptf ) << '\n';
  std::cout << "monomials: " << res.monomial_count << '\n';
  if ( res.bound_missed )
  {
    std::cout << "bound-missed: true\n";
  }
  if ( !opt.json_out.empty() )
  {
    std::ofstream os( opt.json_out );
    if ( !os )
    {
      std::cerr << "error: cannot write " << opt.json_out << '\n';
      return 1;
    }
    os << ptf::ptf_to_json( res.ptf ).dump( 2 ) << '\n';
  }
  return 0;
}

int run_density( std::string const& bf_text, uint64_t budget )
{
  auto const f = ptf::parse_bf( bf_text );
  auto const res = ptf::brute_force_density(
      f, budget ? std::optional<uint64_t>( budget ) : std::nullopt );
  if ( res.exact )
  {
    std::cout << "density: " << res.value << '\n';
  }
  else
  {
    std::cout << "density: unknown (<= " << res.value << ", budget exhausted)\n";
  }
  return 0;
}

int run_verify( std::string const& bf_text, std::string const& ptf_path )
{
  auto const f = ptf::parse_bf( bf_text );
  std::ifstream is( ptf_path );
  if ( !is )
  {
    throw CLI::ValidationError( "cannot read " + ptf_path );
  }
  nlohmann::json j;
  is >> j;
  auto const p = ptf::ptf_from_json( j );
  auto const rep = ptf::verify_ptf( p, f );
  if ( rep.ok )
  {
    std::cout << "verified: " << p.monomial_count() << " monomials\n";
    return 0;
  }
  for ( auto const& v : rep.violations )
  {
    std::cout << "violation at t=" << v.t << ": value " << ptf::format_rat( v.value )
              << ( v.is_zero ? " (zero, sign undefined)" : " (wrong sign)" ) << '\n';
  }
  return 1;
}

int run_calibrate()
{
  auto const entries = ptf::calibration::calibrate();
  for ( auto const& e : entries )
  {
    std::cout << "bit-order=" << ( e.conv.reversed_bits ? "x0-msb" : "x0-lsb" )
              << " bit0=" << ( e.conv.bit0_positive ? "+1" : "-1" ) << ": "
              << ( e.all_verify ? "all reference polynomials verify" : "fails" );
    if ( !e.all_verify )
    {
      std::cout << " (";
      for ( size_t i = 0; i < e.failing_sources.size(); ++i )
      {
        std::cout << ( i ? "," : "" ) << e.failing_sources[i];
      }
      std::cout << ")";
    }
    std::cout << '\n';
  }
  return 0;
}

struct sweep_options
{
  uint32_t n{ 4 };
  std::string algorithms{ "l" };
  std::string population{ "all" };
  uint64_t seed{ 0 };
  std::string out_dir;
  std::string format{ "both" };
  unsigned workers{ 1 };
  bool descending{ false };
  bool signed_sort{ false };
  ptf::ga_config ga;
};

int run_sweep( sweep_options const& opt )
{
  ptf::sweep_spec spec;
  spec.n = opt.n;
  std::stringstream ss( opt.algorithms );
  for ( std::string tok; std::getline( ss, tok, ',' ); )
  {
    spec.algorithms.push_back( ptf::algorithm_from_name( tok ) );
  }
  spec.population = ptf::population_spec::parse( opt.population );
  spec.seed = opt.seed;
  spec.ga = opt.ga;
  spec.sort = { !opt.descending, !opt.signed_sort };

  auto const report = ptf::sweep( spec, opt.workers );

  std::filesystem::create_directories( opt.out_dir );
  ptf::emit_report( report, opt.out_dir, opt.format != "csv", opt.format != "json" );
  for ( auto const& [name, sum] : report.results )
  {
    std::cout << name << ": avg " << ptf::decimal_string( sum.average, 4 ) << " monomials over "
              << report.population_size << " functions (" << sum.oracle_calls
              << " oracle calls, " << sum.total_seconds << " s)\n";
  }
  return 0;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Sparse sign-representations of Boolean functions" };
  app.require_subcommand( 1 );

  std::string bf_text;
  auto* spectrum_cmd = app.add_subcommand( "spectrum", "Print the exact spectral coefficients" );
  spectrum_cmd->add_option( "bf", bf_text, "Boolean function (binary, array or n:hex form)" )
      ->required();

  solve_options sopt;
  auto* solve_cmd = app.add_subcommand( "solve", "Find a sparse sign-representation" );
  solve_cmd->add_option( "--alg", sopt.algorithm, "Algorithm: brute|l|b|3q|ga" );
  solve_cmd->add_option( "--seed", sopt.seed, "GA seed" );
  solve_cmd->add_flag( "--descending", sopt.descending, "Sort monomials by descending key" );
  solve_cmd->add_flag( "--signed-sort", sopt.signed_sort, "Sort by signed spectral coefficient" );
  solve_cmd->add_option( "--json", sopt.json_out, "Write the PTF as JSON to this file" );
  add_ga_flags( solve_cmd, sopt.ga );
  solve_cmd->add_option( "bf", sopt.bf_text, "Boolean function" )->required();

  std::string density_bf;
  uint64_t density_budget{ 0 };
  auto* density_cmd = app.add_subcommand( "density", "Exact threshold density (exhaustive)" );
  density_cmd->add_option( "--budget", density_budget, "Cap on oracle calls (0 = unlimited)" );
  density_cmd->add_option( "bf", density_bf, "Boolean function" )->required();

  std::string verify_bf, verify_path;
  auto* verify_cmd = app.add_subcommand( "verify", "Verify a PTF JSON file against a function" );
  verify_cmd->add_option( "bf", verify_bf, "Boolean function" )->required();
  verify_cmd->add_option( "ptf", verify_path, "PTF JSON file" )->required();

  sweep_options wopt;
  auto* sweep_cmd = app.add_subcommand( "sweep", "Run algorithms over a function family" );
  sweep_cmd->add_option( "--n", wopt.n, "Variable count" )->required();
  sweep_cmd->add_option( "--alg", wopt.algorithms, "Comma-separated algorithms" )->required();
  sweep_cmd->add_option( "--population", wopt.population, "all | first-half | sample:K" );
  sweep_cmd->add_option( "--seed", wopt.seed, "Sweep seed" );
  sweep_cmd->add_option( "--out", wopt.out_dir, "Output directory" )->required();
  sweep_cmd->add_option( "--format", wopt.format, "csv | json | both" )
      ->check( CLI::IsMember( { "csv", "json", "both" } ) );
  sweep_cmd->add_option( "--workers", wopt.workers, "Worker thread count" );
  sweep_cmd->add_flag( "--descending", wopt.descending, "Sort monomials by descending key" );
  sweep_cmd->add_flag( "--signed-sort", wopt.signed_sort, "Sort by signed spectral coefficient" );
  add_ga_flags( sweep_cmd, wopt.ga );

  app.add_subcommand( "calibrate", "Report which assignment conventions verify the built-in references" );

  try
  {
    app.parse( argc, argv );
    if ( spectrum_cmd->parsed() )
    {
      return run_spectrum( bf_text );
    }
    if ( solve_cmd->parsed() )
    {
      return run_solve( sopt );
    }
    if ( density_cmd->parsed() )
    {
      return run_density( density_bf, density_budget );
    }
    if ( verify_cmd->parsed() )
    {
      return run_verify( verify_bf, verify_path );
    }
    if ( sweep_cmd->parsed() )
    {
      return run_sweep( wopt );
    }
    return run_calibrate();
  }
  catch ( CLI::ParseError const& e )
  {
    if ( e.get_exit_code() == 0 )
    {
      return app.exit( e );
    }
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  catch ( std::invalid_argument const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
