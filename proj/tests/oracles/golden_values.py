"""Independent high-precision oracles for the frozen expected values in the C++ tests.

Run with `python3 tests/oracles/golden_values.py`. Uses mpmath at 40 digits and
never calls into the C++ library.
"""
import mpmath as mp

mp.mp.dps = 40
KM = mp.mpf(1000)


def xi(re, ro, gamma):
    return mp.acos((re**2 + ro**2 - gamma**2) / (2 * re * ro))


def arc(x, cap):
    s = 1 - mp.cos(cap)**2 / mp.cos(x)**2
    return mp.asin(mp.sqrt(max(s, 0)))


def cap_integral(cap):
    return mp.quad(lambda x: mp.cos(x) * arc(x, cap), [0, cap])


def report(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


re = 6371 * KM
report("xi(6371,6971,1000)", xi(re, re + 600 * KM, 1000 * KM))
report("arc_half(xi=0.3, phi=pi/2-0.1)", arc(mp.mpf("0.1"), mp.mpf("0.3")))
ro = re + 600 * KM
report("kappa(alt 600km, u=750km)", xi(re, ro, 750 * KM))

report("ccdf(m=3,x=0.5)", mp.e**(-1.5) * (1 + 1.5 + 1.125))
sigma2 = mp.mpf(10)**((-174 + 10 * mp.log10(2e7) - 30) / 10)
report("noise(-174dBm/Hz, 20MHz) W", sigma2)
report("snr(defaults, g=20dB, d=600km, h=1)", mp.mpf(1) * 100 / sigma2 / (600 * KM)**2)

report("E[N]/(lambda mu), re=6400 ro=7000 gamma=1000", cap_integral(xi(6400 * KM, 7000 * KM, 1000 * KM)) / mp.pi)
report("E[N]/(lambda mu), re=6400 ro=7000 gamma=2000", cap_integral(xi(6400 * KM, 7000 * KM, 2000 * KM)) / mp.pi)

# Moment matching: polar (20, 30), altitude 600 km, gamma 650 km.
c = xi(re, ro, 650 * KM)
lam_bar = 20 / mp.sin(c)
mu_bar = 20 * 30 * c / (lam_bar * cap_integral(c))
report("moment_match lambda_bar", lam_bar)
report("moment_match mu_bar", mu_bar)


def time_fraction(lam, mu, cap):
    inner = mp.quad(lambda x: mp.cos(x) * (1 - mp.exp(-mu / mp.pi * arc(x, cap))), [0, cap])
    return 1 - mp.exp(-lam * inner)


c6 = xi(re, re + 700 * KM, 750 * KM)
report("F(25,25) alt700 gamma750", time_fraction(25, 25, c6))
report("F(60,10)/F(10,60) alt700 gamma750", time_fraction(60, 10, c6) / time_fraction(10, 60, c6))

# Harvesting capacity by a second route: for Rayleigh fading the rate
# expectation has the closed form E[log2(1+S H)] = e^{1/S} E1(1/S) / ln 2.
def capacity(lam, mu, re, ro, gamma, snr1m, bw):
    ra = ro - re

    def density(u):
        k = xi(re, ro, u)
        gbar = lambda x: mp.exp(-mu / mp.pi * arc(x, k))
        void = mp.exp(-lam * mp.quad(lambda x: mp.cos(x) * (1 - gbar(x)), [0, k]))
        def singular(t):
            x = k * mp.sin(t)
            gap = k * mp.cos(t)**2 / (1 + mp.sin(t))
            s = mp.sin(gap) * mp.sin(k + x) / mp.cos(x)**2
            return gbar(x) * k * mp.cos(t) / mp.sqrt(s)

        inner = mp.quad(singular, [0, mp.pi / 2])
        return lam * mu * u / (mp.pi * re * ro) * void * inner

    def rate(u):
        s = snr1m / u**2
        return mp.e**(1 / s) * mp.e1(1 / s) / mp.log(2)

    return bw * mp.quad(lambda u: density(u) * rate(u), [ra, gamma])


mp.mp.dps = 20
snr1m = mp.mpf(1) * mp.mpf(10)**3.5 / sigma2
report("capacity(50,50, alt600, gamma1200, g35dB) bit/s",
       capacity(50, 50, re, ro, 1200 * KM, snr1m, 2e7))
