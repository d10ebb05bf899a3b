// Bar chart of the nine single-pixel readings from the latest scan.
// Bars live on a fixed [0, 1] intensity axis; color marks the three
// reflectance bands so black/gray/white squares stand apart at a glance.

export function renderIntensityChart(
    container: HTMLElement,
    measurements: number[] | null,
): void {
    container.replaceChildren();
    if (!measurements || measurements.length !== 9) {
        container.classList.add("hidden");
        return;
    }
    container.classList.remove("hidden");

    const title = document.createElement("div");
    title.className = "chart-title";
    title.textContent = "single-pixel intensities";
    container.appendChild(title);

    const bars = document.createElement("div");
    bars.className = "chart-bars";
    measurements.forEach((value, i) => {
        const clamped = Math.min(1, Math.max(0, value));
        const slot = document.createElement("div");
        slot.className = "chart-slot";

        const bar = document.createElement("div");
        bar.className = "chart-bar " + bandOf(clamped);
        bar.style.height = `${Math.round(clamped * 100)}%`;
        bar.dataset.value = value.toFixed(3);

        const label = document.createElement("div");
        label.className = "chart-label";
        label.textContent = String(i + 1);

        slot.appendChild(bar);
        slot.appendChild(label);
        bars.appendChild(slot);
    });
    container.appendChild(bars);
}

function bandOf(value: number): string {
    if (value < 1 / 3) return "band-low";
    if (value > 2 / 3) return "band-high";
    return "band-mid";
}
