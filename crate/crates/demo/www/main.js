import init, { page_curve, paradox_sweep, lattice_decay } from "./pkg/evaplab_demo.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c"];

function values(form) {
  const out = {};
  for (const el of form.elements) {
    if (el.name) out[el.name] = el.type === "number" ? Number(el.value) : el.value;
  }
  return out;
}

// Line plot of one or more series sharing an x axis. `logY` plots log10(y).
function plot(canvas, xs, series, { logY = false, marks = [], xLabel = "", yLabel = "" } = {}) {
  const dpr = window.devicePixelRatio || 1;
  const w = canvas.clientWidth, h = canvas.clientHeight;
  canvas.width = w * dpr;
  canvas.height = h * dpr;
  const ctx = canvas.getContext("2d");
  ctx.scale(dpr, dpr);
  ctx.clearRect(0, 0, w, h);

  const tf = (y) => (logY ? Math.log10(y) : y);
  const ys = series.flatMap((s) => s.ys.filter((y) => !logY || y > 0).map(tf));
  if (!xs.length || !ys.length) return;
  const pad = { l: 55, r: 10, t: 10, b: 30 };
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  let y0 = Math.min(...ys), y1 = Math.max(...ys);
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const px = (x) => pad.l + ((x - x0) / (x1 - x0 || 1)) * (w - pad.l - pad.r);
  const py = (y) => h - pad.b - ((y - y0) / (y1 - y0)) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.beginPath();
  ctx.moveTo(pad.l, pad.t);
  ctx.lineTo(pad.l, h - pad.b);
  ctx.lineTo(w - pad.r, h - pad.b);
  ctx.stroke();
  for (let i = 0; i <= 4; i++) {
    const y = y0 + ((y1 - y0) * i) / 4;
    const label = logY ? `1e${y.toFixed(1)}` : y.toPrecision(3);
    ctx.fillText(label, 4, py(y) + 4);
    const x = x0 + ((x1 - x0) * i) / 4;
    ctx.fillText(x.toPrecision(3), px(x) - 10, h - pad.b + 14);
  }
  ctx.fillText(xLabel, w - pad.r - ctx.measureText(xLabel).width, h - 4);
  ctx.fillText(yLabel, pad.l + 4, pad.t + 10);

  if (!logY && y0 < 0 && y1 > 0) {
    ctx.strokeStyle = "#ccc";
    ctx.beginPath();
    ctx.moveTo(pad.l, py(0));
    ctx.lineTo(w - pad.r, py(0));
    ctx.stroke();
  }
  for (const m of marks) {
    ctx.strokeStyle = m.color || "#aaa";
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(px(m.x), pad.t);
    ctx.lineTo(px(m.x), h - pad.b);
    ctx.stroke();
    ctx.setLineDash([]);
  }
  series.forEach((s, k) => {
    ctx.strokeStyle = s.color || COLORS[k % COLORS.length];
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    let started = false;
    xs.forEach((x, i) => {
      const y = s.ys[i];
      if (logY && !(y > 0)) { started = false; return; }
      if (started) ctx.lineTo(px(x), py(tf(y)));
      else { ctx.moveTo(px(x), py(tf(y))); started = true; }
    });
    ctx.stroke();
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fillText(s.name, w - pad.r - 120, pad.t + 12 + 14 * k);
  });
}

function show(info, text, isError) {
  info.textContent = text;
  info.className = isError ? "info error" : "info";
}

function drawCurve() {
  const v = values(document.getElementById("curve-form"));
  const info = document.getElementById("curve-info");
  const out = JSON.parse(page_curve(v.s_bh, v.s_matter, v.steps));
  if (out.error) return show(info, out.error, true);
  plot(document.getElementById("curve-plot"), out.r,
    [{ name: "S(R)", ys: out.s_r }, { name: "S(R':R)", ys: out.mi }],
    { marks: [{ x: out.initial_page_time }, { x: out.final_page_time }], xLabel: "radiated r", yLabel: "qunats" });
  show(info, `Page times: ${out.initial_page_time} and ${out.final_page_time}`);
}

function drawSweep() {
  const v = values(document.getElementById("sweep-form"));
  const info = document.getElementById("sweep-info");
  const out = JSON.parse(paradox_sweep(v.theorem, v.s_bh, v.s_matter, v.eta, v.theta, v.steps));
  if (out.error) return show(info, out.error, true);
  const marks = out.onset_r === null ? [] : [{ x: out.onset_r, color: "#d62728" }];
  plot(document.getElementById("sweep-plot"), out.r, [{ name: "margin", ys: out.margin }],
    { marks, xLabel: "radiated r", yLabel: "margin" });
  show(info, out.onset_r === null
    ? `${out.theorem}: no contradiction before the Planck-scale cutoff`
    : `${out.theorem}: contradiction from r = ${out.onset_r}; reject one of ${out.assumptions.join(", ")}`);
}

function drawLattice() {
  const v = values(document.getElementById("lattice-form"));
  const info = document.getElementById("lattice-info");
  const out = JSON.parse(lattice_decay(v.n_sites, v.self_freq, v.coupling, v.block_size, v.d_max));
  if (out.error) return show(info, out.error, true);
  plot(document.getElementById("lattice-plot"), out.d, [{ name: "I(A:B)", ys: out.mi }],
    { logY: true, xLabel: "sites between blocks", yLabel: "log10 MI" });
  show(info, out.rate === null
    ? "too few points above the numerical floor to fit"
    : `decay rate ${out.rate} per site, r² = ${out.r_squared}`);
}

await init();
const panels = [["curve-form", drawCurve], ["sweep-form", drawSweep], ["lattice-form", drawLattice]];
for (const [id, draw] of panels) {
  document.getElementById(id).addEventListener("input", draw);
  draw();
}
window.addEventListener("resize", () => panels.forEach(([, draw]) => draw()));
